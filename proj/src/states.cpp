#include "nphase/states.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace nphase {

namespace {

// Largest mean photon number for which e^{-nbar} is representable.
constexpr double kMaxNbar = 700.0;

void check_nbar(double nbar, const char* who) {
  if (!(nbar >= 0.0) || nbar > kMaxNbar)
    throw std::domain_error(std::string(who) + ": mean photon number out of range");
}

}  // namespace

cdouble ModeSplit::alpha1() const {
  return r * std::sin(theta / 2.0) * std::polar(1.0, delta + phi);
}

cdouble ModeSplit::alpha2() const {
  return r * std::cos(theta / 2.0) * std::polar(1.0, delta - phi);
}

ModeSplit ModeSplit::from_alphas(cdouble alpha1, cdouble alpha2) {
  ModeSplit s;
  const double m1 = std::abs(alpha1);
  const double m2 = std::abs(alpha2);
  s.r = std::hypot(m1, m2);
  s.theta = s.r > 0.0 ? 2.0 * std::atan2(m1, m2) : 0.0;
  const double arg1 = m1 > 0.0 ? std::arg(alpha1) : 0.0;
  const double arg2 = m2 > 0.0 ? std::arg(alpha2) : 0.0;
  // When one amplitude vanishes its phase is free; pin it to the other's.
  s.delta = (m1 > 0.0 && m2 > 0.0) ? (arg1 + arg2) / 2.0 : (m1 > 0.0 ? arg1 : arg2);
  s.phi = (m1 > 0.0 && m2 > 0.0) ? (arg1 - arg2) / 2.0 : 0.0;
  return s;
}

double TmsvParam::nbar() const {
  const double q = std::norm(xi);
  if (q >= 1.0) throw std::domain_error("TmsvParam: |xi| must be < 1");
  return 2.0 * q / (1.0 - q);
}

TmsvParam TmsvParam::from_nbar(double nbar, double phase) {
  check_nbar(nbar, "TmsvParam::from_nbar");
  return {std::polar(std::sqrt(nbar / (nbar + 2.0)), phase)};
}

double poisson_upper_tail(double nbar, int n_max) {
  check_nbar(nbar, "poisson_upper_tail");
  if (nbar == 0.0 || n_max < 0) return n_max < 0 ? 1.0 : 0.0;
  // March the pmf recursion up to n_max + 1, then add terms until they stop
  // mattering. Summing the upper side avoids the 1 - cdf cancellation.
  double term = std::exp(-nbar);
  for (int n = 1; n <= n_max + 1; ++n) term *= nbar / n;
  double tail = term;
  for (int n = n_max + 2; term > 0.0; ++n) {
    term *= nbar / n;
    if (term <= tail * 1e-18) break;
    tail += term;
  }
  return tail;
}

int coherent_cutoff_for(double nbar, double eps) {
  check_nbar(nbar, "coherent_cutoff_for");
  if (!(eps > 0.0)) throw std::domain_error("coherent_cutoff_for: eps must be > 0");
  int n = 0;
  while (poisson_upper_tail(nbar, n) > eps) ++n;
  return n;
}

int tmsv_cutoff_for(double nbar, double eps) {
  check_nbar(nbar, "tmsv_cutoff_for");
  if (!(eps > 0.0)) throw std::domain_error("tmsv_cutoff_for: eps must be > 0");
  const double q = nbar / (nbar + 2.0);
  if (q == 0.0) return 0;
  int pairs = 0;
  while (std::pow(q, pairs + 1) > eps) ++pairs;
  return 2 * pairs;
}

TwoModeKet coherent_pair(cdouble alpha1, cdouble alpha2, int cutoff, double eps) {
  const double nbar = std::norm(alpha1) + std::norm(alpha2);
  check_nbar(nbar, "coherent_pair");
  const double tail = poisson_upper_tail(nbar, cutoff);
  if (tail > eps)
    throw CutoffError("coherent_pair: cutoff " + std::to_string(cutoff) +
                          " leaves mass " + std::to_string(tail),
                      coherent_cutoff_for(nbar, eps));

  // Single-mode ladders c_k = e^{-|a|^2/2} a^k / sqrt(k!) by ratio recursion;
  // the product of the two prefactors is e^{-nbar/2}.
  std::vector<cdouble> u(cutoff + 1), v(cutoff + 1);
  u[0] = std::exp(-0.5 * std::norm(alpha1));
  v[0] = std::exp(-0.5 * std::norm(alpha2));
  for (int n = 1; n <= cutoff; ++n) {
    const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(n));
    u[n] = u[n - 1] * alpha1 * inv_sqrt;
    v[n] = v[n - 1] * alpha2 * inv_sqrt;
  }

  TwoModeKet psi(cutoff);
  for (int n = 0; n <= cutoff; ++n) {
    auto blk = psi.block(n);
    for (int k = 0; k <= n; ++k) blk[k] = u[k] * v[n - k];
  }
  psi.set_tail_bound(tail);
  return psi;
}

TwoModeKet tmsv(const TmsvParam& param, int cutoff, double eps) {
  const double q = std::norm(param.xi);
  if (q >= 1.0) throw std::domain_error("tmsv: |xi| must be < 1");
  const int pairs = cutoff / 2;
  const double tail = q == 0.0 ? 0.0 : std::pow(q, pairs + 1);  // geometric tail
  if (tail > eps)
    throw CutoffError("tmsv: cutoff " + std::to_string(cutoff) + " leaves mass " +
                          std::to_string(tail),
                      tmsv_cutoff_for(param.nbar(), eps));

  TwoModeKet psi(cutoff);
  cdouble a = std::sqrt(1.0 - q);
  for (int n = 0; n <= pairs; ++n) {
    psi.at(n, n) = a;
    a *= param.xi;
  }
  psi.set_tail_bound(tail);
  return psi;
}

BlockKet su2_coherent(int n, double theta, double phi) {
  if (n < 0) throw std::domain_error("su2_coherent: negative photon number");
  if (n > 1020) throw std::domain_error("su2_coherent: binomials overflow past n = 1020");
  const double s = std::sin(theta / 2.0);
  const double c = std::cos(theta / 2.0);

  BlockKet bk;
  bk.blocks.resize(n + 1);
  auto& blk = bk.blocks[n];
  blk.resize(n + 1);
  double binom = 1.0;  // C(n, k), updated by ratio
  for (int k = 0; k <= n; ++k) {
    if (k > 0) binom *= static_cast<double>(n - k + 1) / k;
    blk[k] = std::sqrt(binom) * std::pow(s, k) * std::pow(c, n - k) *
             std::polar(1.0, (2.0 * k - n) * phi);
  }
  return bk;
}

TwoModeKet random_pure(std::uint64_t seed, int cutoff) {
  std::mt19937_64 rng(seed);
  // (0,1) uniform from the top 53 bits; the +0.5 offset keeps log() finite.
  auto unit = [&rng]() { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; };

  TwoModeKet psi(cutoff);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (cdouble& c : psi.raw()) {
    const double radius = std::sqrt(-2.0 * std::log(unit()));
    const double angle = two_pi * unit();
    c = cdouble(radius * std::cos(angle), radius * std::sin(angle));
  }
  psi.normalize();
  return psi;
}

}  // namespace nphase
