#include "nphase/serialize.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace nphase {

using nlohmann::json;

json state_to_json(const TwoModeKet& psi) {
  json amps = json::array();
  for (int n = 0; n <= psi.cutoff(); ++n) {
    const auto blk = psi.block(n);
    for (int k = 0; k <= n; ++k) {
      if (blk[k] == cdouble{}) continue;
      amps.push_back({k, n - k, blk[k].real(), blk[k].imag()});
    }
  }
  return json{{"cutoff", psi.cutoff()}, {"amps", std::move(amps)}};
}

TwoModeKet state_from_json(const json& j) {
  if (!j.is_object() || !j.contains("cutoff") || !j.contains("amps"))
    throw std::invalid_argument("state: expected {\"cutoff\", \"amps\"}");
  if (!j["cutoff"].is_number_integer())
    throw std::invalid_argument("state: cutoff must be an integer");
  const int cutoff = j["cutoff"].get<int>();
  if (cutoff < 0 || cutoff > 100000)
    throw std::invalid_argument("state: cutoff out of range");
  if (!j["amps"].is_array()) throw std::invalid_argument("state: amps must be an array");

  TwoModeKet psi(cutoff);
  std::set<std::pair<int, int>> seen;
  for (const auto& entry : j["amps"]) {
    if (!entry.is_array() || entry.size() != 4 || !entry[0].is_number_integer() ||
        !entry[1].is_number_integer() || !entry[2].is_number() || !entry[3].is_number())
      throw std::invalid_argument("state: each amp must be [k, l, re, im]");
    const int k = entry[0].get<int>();
    const int l = entry[1].get<int>();
    if (k < 0 || l < 0 || k + l > cutoff)
      throw std::invalid_argument("state: |" + std::to_string(k) + "," +
                                  std::to_string(l) + "> outside cutoff");
    if (!seen.insert({k, l}).second)
      throw std::invalid_argument("state: duplicate amplitude for |" +
                                  std::to_string(k) + "," + std::to_string(l) + ">");
    const double re = entry[2].get<double>();
    const double im = entry[3].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im))
      throw std::invalid_argument("state: non-finite amplitude");
    psi.at(k, l) = cdouble(re, im);
  }
  psi.set_tail_bound(std::abs(1.0 - psi.norm2()));
  return psi;
}

json to_json(const StokesReport& rep) {
  json witnesses = json::array();
  for (const auto& w : rep.witnesses)
    witnesses.push_back({{"label", w.label}, {"value", w.value}, {"entangled", w.entangled}});
  return json{
      {"mean_N", rep.mean_n},
      {"mean_S", {rep.mean_s[0], rep.mean_s[1], rep.mean_s[2]}},
      {"cov_N_S", {rep.cov_ns[0], rep.cov_ns[1], rep.cov_ns[2]}},
      {"mean_Sx2", rep.mean_sx2},
      {"cov_N_Sx2", rep.cov_n_sx2},
      {"witnesses", std::move(witnesses)},
      {"max_imag", rep.max_imag},
  };
}

}  // namespace nphase
