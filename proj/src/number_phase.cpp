#include "nphase/number_phase.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nphase {

cdouble BlockKet::amp(int n, int twoM) const {
  if (n < 0) throw std::out_of_range("BlockKet::amp: negative n");
  if (std::abs(twoM) > n || ((twoM - n) % 2) != 0)
    throw std::out_of_range("BlockKet::amp: twoM = " + std::to_string(twoM) +
                            " invalid for n = " + std::to_string(n));
  if (n > max_n() || blocks[n].empty()) return {};
  return blocks[n][(n + twoM) / 2];
}

double BlockKet::norm2() const {
  double s = 0.0;
  for (const auto& b : blocks)
    for (const cdouble& c : b) s += std::norm(c);
  return s;
}

BlockKet relabel(const TwoModeKet& psi) {
  BlockKet bk;
  bk.blocks.resize(psi.cutoff() + 1);
  for (int n = 0; n <= psi.cutoff(); ++n) {
    const auto blk = psi.block(n);
    bk.blocks[n].assign(blk.begin(), blk.end());
  }
  return bk;
}

TwoModeKet unrelabel(const BlockKet& bk) {
  const int cutoff = bk.max_n();
  if (cutoff < 0) throw std::invalid_argument("unrelabel: empty BlockKet");
  TwoModeKet psi(cutoff);
  for (int n = 0; n <= cutoff; ++n) {
    const auto& src = bk.blocks[n];
    if (src.empty()) continue;
    if (static_cast<int>(src.size()) != n + 1)
      throw std::invalid_argument("unrelabel: block " + std::to_string(n) +
                                  " has wrong length");
    auto dst = psi.block(n);
    for (int i = 0; i <= n; ++i) dst[i] = src[i];
  }
  return psi;
}

namespace {

DephasedDensity dephase_impl(const TwoModeKet& psi, DephasingKind kind) {
  const double total = psi.norm2();
  if (total <= 0.0) throw std::domain_error("dephase: zero state");
  const int cutoff = psi.cutoff();

  DephasedDensity rho;
  rho.kind = kind;

  // Gather the label range and the raw projected weights.
  const bool by_n = kind == DephasingKind::TotalNumber;
  const int lo = by_n ? 0 : -cutoff;
  for (int label = lo; label <= cutoff; ++label) {
    double raw = 0.0;
    if (by_n) {
      for (const cdouble& c : psi.block(label)) raw += std::norm(c);
    } else {
      // Fixed twoM = k - l cuts across blocks n = |twoM|, |twoM|+2, ...
      for (int n = std::abs(label); n <= cutoff; n += 2)
        raw += std::norm(psi.block(n)[(n + label) / 2]);
    }
    const double weight = raw / total;
    if (weight <= kWeightFloor) continue;

    TwoModeKet proj(cutoff);
    const double inv = 1.0 / std::sqrt(raw);
    if (by_n) {
      const auto src = psi.block(label);
      auto dst = proj.block(label);
      for (int i = 0; i <= label; ++i) dst[i] = src[i] * inv;
    } else {
      for (int n = std::abs(label); n <= cutoff; n += 2)
        proj.block(n)[(n + label) / 2] = psi.block(n)[(n + label) / 2] * inv;
    }
    rho.components.push_back({label, weight, std::move(proj)});
  }
  return rho;
}

}  // namespace

DephasedDensity dephase_n(const TwoModeKet& psi) {
  return dephase_impl(psi, DephasingKind::TotalNumber);
}

DephasedDensity dephase_m(const TwoModeKet& psi) {
  return dephase_impl(psi, DephasingKind::RelativeNumber);
}

double DephasedDensity::weight_sum() const {
  double s = 0.0;
  for (const auto& c : components) s += c.weight;
  return s;
}

double linear_entropy(const DephasedDensity& rho) {
  double purity = 0.0;
  for (const auto& c : rho.components) purity += c.weight * c.weight;
  const double s = 1.0 - purity;
  return s < 0.0 ? 0.0 : s;
}

}  // namespace nphase
