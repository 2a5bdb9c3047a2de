#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "nphase/fock.hpp"
#include "nphase/number_phase.hpp"

namespace nphase {

/// Polar parametrization of a pair of coherent amplitudes,
///   alpha1 = r sin(theta/2) e^{i(delta + phi)},
///   alpha2 = r cos(theta/2) e^{i(delta - phi)},
/// with r^2 the total mean photon number. theta in [0, pi] keeps both moduli
/// nonnegative, so from_alphas . (alpha1, alpha2) is the identity up to
/// rounding while the angle triple itself is only fixed modulo 2 pi shifts.
struct ModeSplit {
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  double delta = 0.0;

  cdouble alpha1() const;
  cdouble alpha2() const;
  double nbar() const noexcept { return r * r; }

  static ModeSplit from_alphas(cdouble alpha1, cdouble alpha2);
};

/// Two-mode squeezed vacuum parameter, |xi| < 1.
struct TmsvParam {
  cdouble xi;

  /// Mean total photon number 2|xi|^2 / (1 - |xi|^2).
  double nbar() const;
  static TmsvParam from_nbar(double nbar, double phase = 0.0);
};

/// A requested cutoff would leave more than eps probability outside the
/// truncated space; suggested_cutoff() is the smallest adequate one.
class CutoffError : public std::runtime_error {
 public:
  CutoffError(const std::string& what, int suggested)
      : std::runtime_error(what), suggested_(suggested) {}
  int suggested_cutoff() const noexcept { return suggested_; }

 private:
  int suggested_;
};

/// Exact Poisson mass above n_max (upper-tail sum, no cancellation).
double poisson_upper_tail(double nbar, int n_max);

/// Smallest cutoff whose truncated mass is <= eps for each family.
int coherent_cutoff_for(double nbar, double eps = kDefaultTruncationEps);
int tmsv_cutoff_for(double nbar, double eps = kDefaultTruncationEps);

/// Product of coherent states |alpha1>|alpha2> truncated at the cutoff.
/// Amplitudes are kept exact (no renormalization); the discarded Poisson tail
/// is recorded as the state's tail bound. Throws CutoffError when the tail
/// exceeds eps.
TwoModeKet coherent_pair(cdouble alpha1, cdouble alpha2, int cutoff,
                         double eps = kDefaultTruncationEps);

/// Two-mode squeezed vacuum sqrt(1-|xi|^2) sum_n xi^n |n,n>, truncated.
/// Same exact-amplitude and tail-bound policy as coherent_pair.
TwoModeKet tmsv(const TmsvParam& param, int cutoff, double eps = kDefaultTruncationEps);

/// SU(2) coherent state on the block of total photon number n:
/// amplitudes sqrt(C(n,k)) sin^k(theta/2) cos^{n-k}(theta/2) e^{i(2k-n)phi}
/// over twoM = 2k - n.
BlockKet su2_coherent(int n, double theta, double phi);

/// Reproducible pseudo-random pure state: i.i.d. complex Gaussian amplitudes
/// from a fixed generator and a fixed Box-Muller map, then normalized, so the
/// result is byte-identical across platforms for the same seed.
TwoModeKet random_pure(std::uint64_t seed, int cutoff);

}  // namespace nphase
