#pragma once

#include <vector>

#include "nphase/fock.hpp"

namespace nphase {

/// The same state re-indexed by total photon number n and half photon-number
/// difference m. Block n carries twoM = 2m in {-n, -n+2, ..., n}; entry i of
/// the block is twoM = 2i - n, i.e. mode-1 occupation i. Empty vectors stand
/// for absent blocks, so partially supported states stay cheap.
struct BlockKet {
  std::vector<std::vector<cdouble>> blocks;

  int max_n() const noexcept { return static_cast<int>(blocks.size()) - 1; }
  /// Amplitude at (n, twoM); zero for absent blocks, throws when twoM and n
  /// have different parity or |twoM| > n.
  cdouble amp(int n, int twoM) const;
  double norm2() const;
};

/// Exact (copy only) change of labels |k,l> -> |n = k+l, twoM = k-l>.
BlockKet relabel(const TwoModeKet& psi);
/// Inverse of relabel; the cutoff is the largest block index.
TwoModeKet unrelabel(const BlockKet& bk);

/// Which label family lost its coherences.
enum class DephasingKind { TotalNumber, RelativeNumber };

/// Components below this weight are dropped to keep purity sums stable.
inline constexpr double kWeightFloor = 1e-15;

struct DephasedComponent {
  int label;         // n for TotalNumber, twoM for RelativeNumber
  double weight;
  TwoModeKet state;  // normalized projection onto the label eigenspace
};

/// Block-diagonal mixture produced by erasing coherences between eigenspaces
/// of one label. Weights are normalized to sum to one (so a fully supported
/// single component has weight exactly 1) and the component states are
/// mutually orthogonal by construction.
struct DephasedDensity {
  DephasingKind kind;
  std::vector<DephasedComponent> components;

  double weight_sum() const;
};

/// Dephase in the total photon number n (keeps the m-side information).
DephasedDensity dephase_n(const TwoModeKet& psi);
/// Dephase in the photon-number difference m (keeps the n-side information).
DephasedDensity dephase_m(const TwoModeKet& psi);

/// Linear entropy 1 - sum_i w_i^2 of the mixture, in [0, 1).
double linear_entropy(const DephasedDensity& rho);

}  // namespace nphase
