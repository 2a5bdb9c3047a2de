#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace nphase {

using cdouble = std::complex<double>;

/// Probability mass allowed to fall outside a truncated space. State
/// constructors refuse cutoffs that cannot meet this budget.
inline constexpr double kDefaultTruncationEps = 1e-12;

/// Offset of the total-photon-number block n in the triangular layout.
constexpr std::size_t block_offset(int n) noexcept {
  return static_cast<std::size_t>(n) * (static_cast<std::size_t>(n) + 1) / 2;
}

/// Number of basis states |k,l> with k + l <= cutoff.
constexpr std::size_t triangular_size(int cutoff) noexcept {
  return block_offset(cutoff + 1);
}

/// Pure state of two bosonic modes on the truncated Fock space k + l <= cutoff.
///
/// Amplitudes are stored by total-photon-number block: block n holds the
/// n + 1 coefficients c_{k,n-k} ordered by the mode-1 occupation k. That makes
/// the number-conserving operators below strictly block local and keeps
/// dephasing and relabeling allocation free.
class TwoModeKet {
 public:
  explicit TwoModeKet(int cutoff);

  static TwoModeKet basis(int cutoff, int k, int l);

  int cutoff() const noexcept { return cutoff_; }
  std::size_t size() const noexcept { return amps_.size(); }

  /// Amplitude c_{k,l}; zero beyond the cutoff, throws for negative indices.
  cdouble amp(int k, int l) const;
  /// Mutable access, bounds checked against the truncation.
  cdouble& at(int k, int l);

  std::span<const cdouble> block(int n) const noexcept;
  std::span<cdouble> block(int n) noexcept;

  std::span<const cdouble> raw() const noexcept { return amps_; }
  std::span<cdouble> raw() noexcept { return amps_; }

  double norm2() const;

  /// Upper bound on the probability mass the truncation discarded. Zero for
  /// states that are exact in the truncated space.
  double tail_bound() const noexcept { return tail_bound_; }
  void set_tail_bound(double bound);

  void normalize();

 private:
  int cutoff_ = 0;
  double tail_bound_ = 0.0;
  std::vector<cdouble> amps_;
};

/// Operators that commute with the total photon number: the two mode numbers,
/// their sum and difference, and the ladder pair Sx, Sy.
enum class NumberOperatorKind { NTotal, N1, N2, Sx, Sy, Sz };

const char* to_string(NumberOperatorKind kind) noexcept;

/// True when the operator is diagonal in the two-mode number basis.
bool is_diagonal(NumberOperatorKind kind) noexcept;

/// Exact commutation table. NTotal commutes with everything; the diagonal
/// kinds commute among themselves; Sx and Sy commute only with NTotal and
/// themselves.
bool commutes(NumberOperatorKind a, NumberOperatorKind b) noexcept;

/// Applies the operator; the result lives on the same truncated space and is
/// generally not normalized. Block local, so no amplitude crosses the cutoff.
TwoModeKet apply_operator(NumberOperatorKind op, const TwoModeKet& psi);

/// <a|b>. Throws on mismatched cutoffs.
cdouble inner(const TwoModeKet& a, const TwoModeKet& b);

/// <psi| op_k ... op_1 |psi> with op_1 = ops.front() applied first. An empty
/// sequence yields the squared norm. Throws on non-finite amplitudes.
cdouble expectation(std::span<const NumberOperatorKind> ops, const TwoModeKet& psi);
cdouble expectation(std::initializer_list<NumberOperatorKind> ops, const TwoModeKet& psi);

/// <N> / <1|1>, tolerant of slightly unnormalized states.
double mean_total_number(const TwoModeKet& psi);

/// Dense matrix of the operator on the full truncated space, basis ordered
/// like the TwoModeKet layout. Intended for cross-checks and small cutoffs.
Eigen::MatrixXcd operator_matrix(NumberOperatorKind op, int cutoff);

/// Restriction of the operator to the total-photon-number block n,
/// an (n+1) x (n+1) matrix over the mode-1 occupation.
Eigen::MatrixXcd block_matrix(NumberOperatorKind op, int n);

}  // namespace nphase
