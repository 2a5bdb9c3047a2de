#pragma once

#include <array>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nphase/fock.hpp"

namespace nphase {

/// Product of coupling strength and interaction time for the two probe
/// atoms. The default pi turns the atomic phases into exact signs, so each
/// atom ends up resolving one parity bit of the field.
struct AtomCouplingConfig {
  double lambda_tau = std::numbers::pi;
};

/// Field (two modes, truncated) tensor two two-level atoms. The atomic
/// amplitudes are ordered |gg>, |ge>, |eg>, |ee> with atom 1 as the left
/// label.
class AtomFieldState {
 public:
  explicit AtomFieldState(int cutoff);

  int cutoff() const noexcept { return cutoff_; }
  std::array<cdouble, 4>& atom_amps(int k, int l);
  const std::array<cdouble, 4>& atom_amps(int k, int l) const;
  double norm2() const;

 private:
  int cutoff_;
  std::vector<std::array<cdouble, 4>> amps_;
};

/// Couples atom 1 to the total photon number and atom 2 to the number
/// difference: each |k,l> branch picks up e^{-i lambda_tau (n e1 + (k-l) e2)}
/// on the excited components. Atoms start in |+>|->. Unitary on the truncated
/// space.
AtomFieldState evolve_atoms(const TwoModeKet& psi, const AtomCouplingConfig& cfg = {});

struct AtomicReduction {
  std::array<cdouble, 4> atom_state;  // normalized two-atom state
  double success_probability;
};

/// Projects the field factor onto |probe> and renormalizes the atoms.
/// Throws std::domain_error when the projection has (numerically) zero
/// probability.
AtomicReduction project_and_reduce(const AtomFieldState& afs, const TwoModeKet& probe);

/// Normalized (even, odd) weights of the total photon number.
std::pair<double, double> parity_weights(const TwoModeKet& psi);

/// Two-atom linear entropy 2 (1 - tr rho_1^2), rescaled so a maximally
/// entangled atom pair scores 1; closed form in the parity weights.
double atomic_linear_entropy(double p_even, double p_odd);
/// Same entropy computed from an explicit two-atom state by partial trace.
double atomic_linear_entropy(std::span<const cdouble, 4> atom_state);

/// A pointer shift fell on or beyond the edge of the pointer register;
/// required_halfwidth() is the smallest size that avoids it.
class PointerWraparoundError : public std::runtime_error {
 public:
  PointerWraparoundError(const std::string& what, int required)
      : std::runtime_error(what), required_(required) {}
  int required_halfwidth() const noexcept { return required_; }

 private:
  int required_;
};

/// Field tensor a discrete pointer register with positions -L..L.
class PointerJointState {
 public:
  PointerJointState(int cutoff, int halfwidth);

  int cutoff() const noexcept { return cutoff_; }
  int halfwidth() const noexcept { return half_; }
  cdouble amp(int k, int l, int position) const;
  cdouble& at(int k, int l, int position);
  double norm2() const;
  /// Mass sitting on the extreme positions +-L; zero certifies that no shift
  /// wrapped.
  double boundary_mass() const;

 private:
  int cutoff_;
  int half_;
  std::vector<cdouble> amps_;
};

/// Halfwidth that accommodates every eigenvalue of b on the truncated space.
int pointer_halfwidth_for(const TwoModeKet& psi, NumberOperatorKind b);

/// e^{i B Q} |psi>|0>: kicks the pointer from rest to the eigenvalue of b on
/// each branch. For Sx and Sy the kick is resolved per total-number block
/// through exact integer eigenvalues.
PointerJointState pointer_shift_state(const TwoModeKet& psi, NumberOperatorKind b,
                                      int halfwidth);

struct PointerMoments {
  double mean_ap;  // <A P>, P the pointer position after the kick
  double mean_a;   // <A>
  double mean_p;   // <P> (equals <B> of the input state)
};

PointerMoments pointer_moments(const PointerJointState& joint, NumberOperatorKind a);

/// Moments of a field observable A against the pointer that recorded B.
/// Requires [A, B] = 0, otherwise the pointer readings do not commute with A
/// and the joint moments stop being well defined.
PointerMoments pointer_joint_measure(const TwoModeKet& psi, NumberOperatorKind b,
                                     NumberOperatorKind a, int halfwidth);
PointerMoments pointer_joint_measure(const TwoModeKet& psi, NumberOperatorKind b,
                                     NumberOperatorKind a);

}  // namespace nphase
