#pragma once

#include <array>
#include <string>
#include <vector>

#include "nphase/fock.hpp"

namespace nphase {

/// Witness magnitudes below this are treated as truncation noise, not as
/// evidence of correlation.
inline constexpr double kWitnessEps = 1e-8;

/// Largest imaginary residue tolerated in moments of Hermitian products.
inline constexpr double kHermitianImagTol = 1e-10;

struct CovarianceWitness {
  double value;    // <N B> - <N><B>
  bool entangled;  // |value| > kWitnessEps
};

/// Covariance of the total photon number with a Stokes component B in
/// {Sx, Sy, Sz}. NTotal routes to the self-covariance (a nonzero number
/// variance already certifies the correlation in this framework); the
/// single-mode numbers are rejected because N1 = (N + Sz)/2 and
/// N2 = (N - Sz)/2 carry no independent information.
CovarianceWitness covariance_witness(const TwoModeKet& psi, NumberOperatorKind b);

/// <N Sx^2> - <N><Sx^2>, the next moment up when the first-order witness
/// vanishes by symmetry.
double higher_moment_witness(const TwoModeKet& psi);

/// Variance <A^2> - <A>^2 of one observable.
double self_covariance(const TwoModeKet& psi, NumberOperatorKind a);

struct WitnessEntry {
  std::string label;
  double value;
  bool entangled;
};

/// One-stop bundle of number and Stokes moments for a state.
struct StokesReport {
  double mean_n = 0.0;
  std::array<double, 3> mean_s{};  // <Sx>, <Sy>, <Sz>
  std::array<double, 3> cov_ns{};  // cov(N, Sx), cov(N, Sy), cov(N, Sz)
  double mean_sx2 = 0.0;
  double cov_n_sx2 = 0.0;
  std::vector<WitnessEntry> witnesses;
  double max_imag = 0.0;  // largest |Im| seen in any Hermitian moment
};

StokesReport stokes_report(const TwoModeKet& psi);

}  // namespace nphase
