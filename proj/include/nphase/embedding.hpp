#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "nphase/fock.hpp"

namespace nphase {

/// Most negative eigenvalue tolerated by the positivity check on the Gram
/// matrix (rounding slack below exact semidefiniteness).
inline constexpr double kPsdEigenFloor = -1e-10;

/// Reduced state on the relative-number factor after embedding the two-mode
/// space into a product of an independent total-number ladder and a
/// relative-number ladder. d is Hermitian, positive semidefinite and scaled
/// to unit trace; row/column i corresponds to twoM = twoM_min + i. Entries
/// that pair labels of different parity vanish identically because twoM and
/// n share parity in the physical space.
struct EmbeddedGram {
  int twoM_min = 0;
  Eigen::MatrixXcd d;

  int dim() const noexcept { return static_cast<int>(d.rows()); }
  int twoM_max() const noexcept { return twoM_min + dim() - 1; }
  cdouble entry(int twoM_row, int twoM_col) const;
};

/// Gram matrix d_{m,m'} = sum_n c_{n,m} c*_{n,m'} over the support of psi.
EmbeddedGram embed_gram(const TwoModeKet& psi);

/// Linear entropy 1 - ||d||_F^2 of the reduced relative-number state.
double embedded_entropy(const EmbeddedGram& g);

double gram_min_eigenvalue(const EmbeddedGram& g);

/// Writes "twoM,twoMp,re,im" rows for every stored entry.
void write_gram_csv(const EmbeddedGram& g, std::ostream& out);

/// Phase-lowering operator on the embedded total-number ladder: one
/// application shifts every component down a rung and annihilates the bottom.
struct SgOperator {
  int power = 1;

  std::vector<cdouble> apply(std::span<const cdouble> ladder) const;
};

/// twoM = 0 amplitudes of psi indexed by total photon number (zero at odd n).
std::vector<cdouble> number_ladder(const TwoModeKet& psi);

struct SgCheckResult {
  double residual;      // || E^2 phi - xi phi || for the normalized ladder
  cdouble xi_estimate;  // Rayleigh quotient <phi| E^2 |phi>
};

/// How close the twoM = 0 ladder of psi is to an eigenvector of the squared
/// lowering operator, with the eigenvalue estimated from the state itself.
/// Throws std::domain_error when the ladder has zero norm.
SgCheckResult sg_eigencheck(const TwoModeKet& psi);

/// Residual of E^2 phi = xi phi for a caller-supplied eigenvalue.
double sg_eigenresidual(const TwoModeKet& psi, cdouble xi);

}  // namespace nphase
