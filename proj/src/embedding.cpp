#include "nphase/embedding.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace nphase {

cdouble EmbeddedGram::entry(int twoM_row, int twoM_col) const {
  if (twoM_row < twoM_min || twoM_row > twoM_max() || twoM_col < twoM_min ||
      twoM_col > twoM_max())
    throw std::out_of_range("EmbeddedGram::entry: label outside stored range");
  return d(twoM_row - twoM_min, twoM_col - twoM_min);
}

EmbeddedGram embed_gram(const TwoModeKet& psi) {
  const int cutoff = psi.cutoff();

  // Support range of twoM = k - l over the nonzero amplitudes.
  int lo = cutoff + 1, hi = -(cutoff + 1);
  for (int n = 0; n <= cutoff; ++n) {
    const auto blk = psi.block(n);
    for (int k = 0; k <= n; ++k) {
      if (blk[k] == cdouble{}) continue;
      const int twoM = 2 * k - n;
      lo = std::min(lo, twoM);
      hi = std::max(hi, twoM);
    }
  }
  if (lo > hi) throw std::domain_error("embed_gram: zero state");

  const int dim = hi - lo + 1;
  EmbeddedGram g;
  g.twoM_min = lo;
  g.d = Eigen::MatrixXcd::Zero(dim, dim);

  for (int t = lo; t <= hi; ++t) {
    for (int tp = lo; tp <= hi; ++tp) {
      if (((t - tp) % 2) != 0) continue;  // parity mismatch: identically zero
      // First block index compatible with both labels and their common parity.
      int n0 = std::max(std::abs(t), std::abs(tp));
      cdouble sum{};
      for (int n = n0; n <= cutoff; n += 2)
        sum += psi.block(n)[(n + t) / 2] * std::conj(psi.block(n)[(n + tp) / 2]);
      g.d(t - lo, tp - lo) = sum;
    }
  }

  const double trace = g.d.trace().real();
  if (trace <= 0.0) throw std::domain_error("embed_gram: nonpositive trace");
  g.d /= trace;
  return g;
}

double embedded_entropy(const EmbeddedGram& g) {
  const double purity = g.d.squaredNorm();  // ||d||_F^2 = tr(d^2) for Hermitian d
  const double s = 1.0 - purity;
  return s < 0.0 ? 0.0 : s;
}

double gram_min_eigenvalue(const EmbeddedGram& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(g.d, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void write_gram_csv(const EmbeddedGram& g, std::ostream& out) {
  out << "twoM,twoMp,re,im\n";
  char buf[128];
  for (int i = 0; i < g.dim(); ++i) {
    for (int j = 0; j < g.dim(); ++j) {
      const cdouble v = g.d(i, j);
      std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g\n", g.twoM_min + i,
                    g.twoM_min + j, v.real(), v.imag());
      out << buf;
    }
  }
}

std::vector<cdouble> SgOperator::apply(std::span<const cdouble> ladder) const {
  if (power < 0) throw std::invalid_argument("SgOperator: negative power");
  std::vector<cdouble> out(ladder.size(), cdouble{});
  const auto p = static_cast<std::size_t>(power);
  for (std::size_t n = 0; n + p < ladder.size(); ++n) out[n] = ladder[n + p];
  return out;
}

std::vector<cdouble> number_ladder(const TwoModeKet& psi) {
  std::vector<cdouble> ladder(psi.cutoff() + 1, cdouble{});
  for (int k = 0; 2 * k <= psi.cutoff(); ++k) ladder[2 * k] = psi.amp(k, k);
  return ladder;
}

namespace {

double ladder_norm(std::span<const cdouble> v) {
  double s = 0.0;
  for (const cdouble& c : v) s += std::norm(c);
  return std::sqrt(s);
}

std::vector<cdouble> normalized_ladder(const TwoModeKet& psi) {
  std::vector<cdouble> phi = number_ladder(psi);
  const double norm = ladder_norm(phi);
  if (norm <= 0.0)
    throw std::domain_error("sg_eigencheck: state has no twoM = 0 support");
  for (cdouble& c : phi) c /= norm;
  return phi;
}

}  // namespace

SgCheckResult sg_eigencheck(const TwoModeKet& psi) {
  const std::vector<cdouble> phi = normalized_ladder(psi);
  const std::vector<cdouble> e2 = SgOperator{2}.apply(phi);
  cdouble xi{};
  for (std::size_t n = 0; n < phi.size(); ++n) xi += std::conj(phi[n]) * e2[n];
  double r2 = 0.0;
  for (std::size_t n = 0; n < phi.size(); ++n) r2 += std::norm(e2[n] - xi * phi[n]);
  return {std::sqrt(r2), xi};
}

double sg_eigenresidual(const TwoModeKet& psi, cdouble xi) {
  const std::vector<cdouble> phi = normalized_ladder(psi);
  const std::vector<cdouble> e2 = SgOperator{2}.apply(phi);
  double r2 = 0.0;
  for (std::size_t n = 0; n < phi.size(); ++n) r2 += std::norm(e2[n] - xi * phi[n]);
  return std::sqrt(r2);
}

}  // namespace nphase
