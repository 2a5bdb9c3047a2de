#include "nphase/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nphase {

namespace {

void check_nbar(double nbar, const char* who) {
  if (!(nbar >= 0.0)) throw std::domain_error(std::string(who) + ": nbar must be >= 0");
}

// Power series sum_k (x/2)^{2k} / (k!)^2, converges fast for moderate x.
double i0_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 1000; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum;
}

// Asymptotic tail of e^{-x} I0(x) ~ (2 pi x)^{-1/2} sum_k ((2k-1)!!)^2 / (k! (8x)^k).
// The series is divergent; stop at the smallest term. Good to ~1e-15 for x > 30.
double i0_scaled_asymptotic(double x) {
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double factor = static_cast<double>(2 * k - 1) * (2 * k - 1) /
                          (8.0 * k * x);
    if (factor >= 1.0) break;  // terms started growing
    term *= factor;
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

}  // namespace

double bessel_i0(double x) {
  if (!std::isfinite(x)) throw std::domain_error("bessel_i0: non-finite argument");
  x = std::abs(x);  // I0 is even
  if (x <= 30.0) return i0_series(x);
  return std::exp(x) * i0_scaled_asymptotic(x);
}

double bessel_i0_scaled(double x) {
  if (!std::isfinite(x)) throw std::domain_error("bessel_i0_scaled: non-finite argument");
  x = std::abs(x);
  if (x <= 30.0) return std::exp(-x) * i0_series(x);
  return i0_scaled_asymptotic(x);
}

double coherent_sm_oracle(double nbar) {
  check_nbar(nbar, "coherent_sm_oracle");
  return 1.0 - bessel_i0_scaled(2.0 * nbar);
}

double tmsv_sm_oracle(double nbar) {
  check_nbar(nbar, "tmsv_sm_oracle");
  return nbar / (1.0 + nbar);
}

double coherent_sa_oracle(double nbar) {
  check_nbar(nbar, "coherent_sa_oracle");
  const double t = std::tanh(2.0 * nbar);
  return t * t;
}

double coherent_parity_even_oracle(double nbar) {
  check_nbar(nbar, "coherent_parity_even_oracle");
  // e^{-nbar} cosh(nbar) = (1 + e^{-2nbar}) / 2, stable for any nbar.
  return 0.5 * (1.0 + std::exp(-2.0 * nbar));
}

double coherent_parity_odd_oracle(double nbar) {
  check_nbar(nbar, "coherent_parity_odd_oracle");
  return 0.5 * (1.0 - std::exp(-2.0 * nbar));
}

double tmsv_sx2_oracle(double nbar) {
  check_nbar(nbar, "tmsv_sx2_oracle");
  return nbar * (nbar + 2.0);
}

double tmsv_n_sx2_oracle(double nbar) {
  check_nbar(nbar, "tmsv_n_sx2_oracle");
  return nbar * (nbar + 2.0) * (3.0 * nbar + 2.0);
}

double tmsv_higher_moment_oracle(double nbar) {
  check_nbar(nbar, "tmsv_higher_moment_oracle");
  return nbar * (nbar + 2.0) * (2.0 * nbar + 2.0);
}

std::vector<OracleResult> oracle_suite(double nbar) {
  check_nbar(nbar, "oracle_suite");
  return {
      {"S_M_coherent", coherent_sm_oracle(nbar), "1 - e^{-2 nbar} I0(2 nbar)"},
      {"S_M_tmsv", tmsv_sm_oracle(nbar), "nbar / (1 + nbar)"},
      {"S_N_tmsv", 0.0, "0 (single relative-number component)"},
      {"S_a_coherent", coherent_sa_oracle(nbar), "tanh^2(2 nbar)"},
      {"parity_even_coherent", coherent_parity_even_oracle(nbar),
       "e^{-nbar} cosh(nbar)"},
      {"parity_odd_coherent", coherent_parity_odd_oracle(nbar),
       "e^{-nbar} sinh(nbar)"},
      {"sx2_tmsv", tmsv_sx2_oracle(nbar), "nbar (nbar + 2)"},
      {"n_sx2_tmsv", tmsv_n_sx2_oracle(nbar), "nbar (nbar + 2) (3 nbar + 2)"},
      {"higher_moment_tmsv", tmsv_higher_moment_oracle(nbar),
       "nbar (nbar + 2) (2 nbar + 2)"},
  };
}

}  // namespace nphase
