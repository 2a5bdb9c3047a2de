#pragma once

#include <string>
#include <vector>

namespace nphase {

/// Modified Bessel function I_0 by its power series. Overflows to inf past
/// x ~ 713; use bessel_i0_scaled when e^{-x} I_0(x) is what you need.
double bessel_i0(double x);

/// e^{-|x|} I_0(x). Power series below x = 30, asymptotic expansion above,
/// accurate to ~1e-14 relative either way and safe for any magnitude.
double bessel_i0_scaled(double x);

struct OracleResult {
  std::string label;
  double value;
  std::string formula;  // human-readable closed form the value came from
};

/// Closed forms used to certify the numerics, all at mean photon number nbar.
double coherent_sm_oracle(double nbar);            // 1 - e^{-2nbar} I0(2nbar)
double tmsv_sm_oracle(double nbar);                // nbar / (1 + nbar)
double coherent_sa_oracle(double nbar);            // tanh^2(2nbar)
double coherent_parity_even_oracle(double nbar);   // e^{-nbar} cosh(nbar)
double coherent_parity_odd_oracle(double nbar);    // e^{-nbar} sinh(nbar)
double tmsv_sx2_oracle(double nbar);               // nbar (nbar + 2)
double tmsv_n_sx2_oracle(double nbar);             // nbar (nbar + 2)(3nbar + 2)
double tmsv_higher_moment_oracle(double nbar);     // nbar (nbar + 2)(2nbar + 2)

/// Bundle of every closed form above, labeled, at one nbar.
std::vector<OracleResult> oracle_suite(double nbar);

}  // namespace nphase
