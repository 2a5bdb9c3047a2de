#include "nphase/fock.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nphase {

namespace {

std::size_t flat_index(int k, int l) noexcept {
  return block_offset(k + l) + static_cast<std::size_t>(k);
}

}  // namespace

TwoModeKet::TwoModeKet(int cutoff) : cutoff_(cutoff) {
  if (cutoff < 0) throw std::invalid_argument("TwoModeKet: negative cutoff");
  amps_.assign(triangular_size(cutoff), cdouble{});
}

TwoModeKet TwoModeKet::basis(int cutoff, int k, int l) {
  TwoModeKet psi(cutoff);
  psi.at(k, l) = 1.0;
  return psi;
}

cdouble TwoModeKet::amp(int k, int l) const {
  if (k < 0 || l < 0) throw std::out_of_range("TwoModeKet::amp: negative occupation");
  if (k + l > cutoff_) return {};
  return amps_[flat_index(k, l)];
}

cdouble& TwoModeKet::at(int k, int l) {
  if (k < 0 || l < 0 || k + l > cutoff_)
    throw std::out_of_range("TwoModeKet::at: |" + std::to_string(k) + "," +
                            std::to_string(l) + "> outside cutoff " +
                            std::to_string(cutoff_));
  return amps_[flat_index(k, l)];
}

std::span<const cdouble> TwoModeKet::block(int n) const noexcept {
  if (n < 0 || n > cutoff_) return {};
  return std::span<const cdouble>(amps_).subspan(block_offset(n), n + 1);
}

std::span<cdouble> TwoModeKet::block(int n) noexcept {
  if (n < 0 || n > cutoff_) return {};
  return std::span<cdouble>(amps_).subspan(block_offset(n), n + 1);
}

double TwoModeKet::norm2() const {
  double s = 0.0;
  for (const cdouble& c : amps_) s += std::norm(c);
  return s;
}

void TwoModeKet::set_tail_bound(double bound) {
  if (!(bound >= 0.0))
    throw std::invalid_argument("TwoModeKet::set_tail_bound: bound must be >= 0");
  tail_bound_ = bound;
}

void TwoModeKet::normalize() {
  const double n2 = norm2();
  if (n2 <= 0.0) throw std::domain_error("TwoModeKet::normalize: zero state");
  const double inv = 1.0 / std::sqrt(n2);
  for (cdouble& c : amps_) c *= inv;
  tail_bound_ = 0.0;
}

const char* to_string(NumberOperatorKind kind) noexcept {
  switch (kind) {
    case NumberOperatorKind::NTotal: return "N";
    case NumberOperatorKind::N1: return "N1";
    case NumberOperatorKind::N2: return "N2";
    case NumberOperatorKind::Sx: return "Sx";
    case NumberOperatorKind::Sy: return "Sy";
    case NumberOperatorKind::Sz: return "Sz";
  }
  return "?";
}

bool is_diagonal(NumberOperatorKind kind) noexcept {
  return kind == NumberOperatorKind::NTotal || kind == NumberOperatorKind::N1 ||
         kind == NumberOperatorKind::N2 || kind == NumberOperatorKind::Sz;
}

bool commutes(NumberOperatorKind a, NumberOperatorKind b) noexcept {
  if (a == b) return true;
  if (a == NumberOperatorKind::NTotal || b == NumberOperatorKind::NTotal) return true;
  // What is left: two distinct non-NTotal kinds. They commute exactly when
  // both are diagonal ([Sx,Sy] = 2i Sz, [Sz,Sx] = 2i Sy and cyclic).
  return is_diagonal(a) && is_diagonal(b);
}

TwoModeKet apply_operator(NumberOperatorKind op, const TwoModeKet& psi) {
  const int nmax = psi.cutoff();
  TwoModeKet out(nmax);
  constexpr cdouble i_unit{0.0, 1.0};
  for (int n = 0; n <= nmax; ++n) {
    const auto src = psi.block(n);
    auto dst = out.block(n);
    for (int k = 0; k <= n; ++k) {
      const cdouble c = src[k];
      if (c == cdouble{}) continue;
      const int l = n - k;
      switch (op) {
        case NumberOperatorKind::NTotal:
          dst[k] += static_cast<double>(n) * c;
          break;
        case NumberOperatorKind::N1:
          dst[k] += static_cast<double>(k) * c;
          break;
        case NumberOperatorKind::N2:
          dst[k] += static_cast<double>(l) * c;
          break;
        case NumberOperatorKind::Sz:
          dst[k] += static_cast<double>(k - l) * c;
          break;
        case NumberOperatorKind::Sx:
          // a1+ a2 |k,l> + a2+ a1 |k,l>
          if (l > 0) dst[k + 1] += std::sqrt(static_cast<double>((k + 1) * l)) * c;
          if (k > 0) dst[k - 1] += std::sqrt(static_cast<double>(k * (l + 1))) * c;
          break;
        case NumberOperatorKind::Sy:
          // i (a2+ a1 - a1+ a2) |k,l>
          if (k > 0) dst[k - 1] += i_unit * std::sqrt(static_cast<double>(k * (l + 1))) * c;
          if (l > 0) dst[k + 1] -= i_unit * std::sqrt(static_cast<double>((k + 1) * l)) * c;
          break;
      }
    }
  }
  return out;
}

cdouble inner(const TwoModeKet& a, const TwoModeKet& b) {
  if (a.cutoff() != b.cutoff())
    throw std::invalid_argument("inner: mismatched cutoffs");
  const auto av = a.raw();
  const auto bv = b.raw();
  cdouble s{};
  for (std::size_t i = 0; i < av.size(); ++i) s += std::conj(av[i]) * bv[i];
  return s;
}

cdouble expectation(std::span<const NumberOperatorKind> ops, const TwoModeKet& psi) {
  TwoModeKet cur = psi;
  for (NumberOperatorKind op : ops) cur = apply_operator(op, cur);
  const cdouble v = inner(psi, cur);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw std::runtime_error("expectation: non-finite value (bad amplitudes?)");
  return v;
}

cdouble expectation(std::initializer_list<NumberOperatorKind> ops, const TwoModeKet& psi) {
  return expectation(std::span<const NumberOperatorKind>(ops.begin(), ops.size()), psi);
}

double mean_total_number(const TwoModeKet& psi) {
  const double n2 = psi.norm2();
  if (n2 <= 0.0) throw std::domain_error("mean_total_number: zero state");
  return expectation({NumberOperatorKind::NTotal}, psi).real() / n2;
}

Eigen::MatrixXcd operator_matrix(NumberOperatorKind op, int cutoff) {
  const auto dim = static_cast<Eigen::Index>(triangular_size(cutoff));
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 0; n <= cutoff; ++n) {
    for (int k = 0; k <= n; ++k) {
      const TwoModeKet col = apply_operator(op, TwoModeKet::basis(cutoff, k, n - k));
      const auto raw = col.raw();
      const auto j = static_cast<Eigen::Index>(block_offset(n) + k);
      for (Eigen::Index i = 0; i < dim; ++i) m(i, j) = raw[i];
    }
  }
  return m;
}

Eigen::MatrixXcd block_matrix(NumberOperatorKind op, int n) {
  if (n < 0) throw std::invalid_argument("block_matrix: negative block");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) {
    const TwoModeKet col = apply_operator(op, TwoModeKet::basis(n, k, n - k));
    const auto blk = col.block(n);
    for (int i = 0; i <= n; ++i) m(i, k) = blk[i];
  }
  return m;
}

}  // namespace nphase
