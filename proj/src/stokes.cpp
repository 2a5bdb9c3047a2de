#include "nphase/stokes.hpp"

#include <cmath>
#include <stdexcept>

namespace nphase {

namespace {

using Op = NumberOperatorKind;

double real_moment(std::initializer_list<Op> ops, const TwoModeKet& psi,
                   double* max_imag = nullptr) {
  const cdouble v = expectation(ops, psi);
  if (max_imag) *max_imag = std::max(*max_imag, std::abs(v.imag()));
  return v.real();
}

}  // namespace

CovarianceWitness covariance_witness(const TwoModeKet& psi, Op b) {
  if (b == Op::NTotal) {
    const double var = self_covariance(psi, Op::NTotal);
    return {var, std::abs(var) > kWitnessEps};
  }
  if (b == Op::N1 || b == Op::N2)
    throw std::invalid_argument(
        "covariance_witness: use Sz; the single-mode numbers are linear "
        "combinations of N and Sz");
  const double nb = real_moment({b, Op::NTotal}, psi);
  const double n = real_moment({Op::NTotal}, psi);
  const double bm = real_moment({b}, psi);
  const double value = nb - n * bm;
  return {value, std::abs(value) > kWitnessEps};
}

double higher_moment_witness(const TwoModeKet& psi) {
  const double nsxx = real_moment({Op::Sx, Op::Sx, Op::NTotal}, psi);
  const double n = real_moment({Op::NTotal}, psi);
  const double sxx = real_moment({Op::Sx, Op::Sx}, psi);
  return nsxx - n * sxx;
}

double self_covariance(const TwoModeKet& psi, Op a) {
  const double sq = real_moment({a, a}, psi);
  const double mean = real_moment({a}, psi);
  return sq - mean * mean;
}

StokesReport stokes_report(const TwoModeKet& psi) {
  StokesReport rep;
  double max_imag = 0.0;

  rep.mean_n = real_moment({Op::NTotal}, psi, &max_imag);
  const std::array<Op, 3> stokes = {Op::Sx, Op::Sy, Op::Sz};
  for (int j = 0; j < 3; ++j) {
    const Op b = stokes[j];
    rep.mean_s[j] = real_moment({b}, psi, &max_imag);
    rep.cov_ns[j] = real_moment({b, Op::NTotal}, psi, &max_imag) -
                    rep.mean_n * rep.mean_s[j];
  }
  rep.mean_sx2 = real_moment({Op::Sx, Op::Sx}, psi, &max_imag);
  rep.cov_n_sx2 = real_moment({Op::Sx, Op::Sx, Op::NTotal}, psi, &max_imag) -
                  rep.mean_n * rep.mean_sx2;

  for (int j = 0; j < 3; ++j) {
    rep.witnesses.push_back({std::string("cov_N_") + to_string(stokes[j]),
                             rep.cov_ns[j], std::abs(rep.cov_ns[j]) > kWitnessEps});
  }
  rep.witnesses.push_back(
      {"cov_N_Sx2", rep.cov_n_sx2, std::abs(rep.cov_n_sx2) > kWitnessEps});

  rep.max_imag = max_imag;
  return rep;
}

}  // namespace nphase
