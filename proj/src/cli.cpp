#include "nphase/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "nphase/ancilla.hpp"
#include "nphase/embedding.hpp"
#include "nphase/number_phase.hpp"
#include "nphase/oracle.hpp"
#include "nphase/serialize.hpp"
#include "nphase/states.hpp"
#include "nphase/stokes.hpp"

namespace nphase {

using nlohmann::json;

const char* to_string(StateKind kind) noexcept {
  switch (kind) {
    case StateKind::CoherentPair: return "coherent_pair";
    case StateKind::Tmsv: return "tmsv";
    case StateKind::CustomFile: return "custom_file";
  }
  return "?";
}

const char* to_string(OutputFormat format) noexcept {
  return format == OutputFormat::Csv ? "csv" : "json";
}

StateKind state_kind_from_string(const std::string& name) {
  if (name == "coherent_pair") return StateKind::CoherentPair;
  if (name == "tmsv") return StateKind::Tmsv;
  if (name == "custom_file") return StateKind::CustomFile;
  throw std::invalid_argument("unknown state kind '" + name +
                              "' (expected coherent_pair, tmsv or custom_file)");
}

OutputFormat output_format_from_string(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw std::invalid_argument("unknown format '" + name + "' (expected csv or json)");
}

std::vector<double> default_nbar_grid() {
  std::vector<double> grid(51);
  for (int i = 0; i <= 50; ++i) grid[i] = i / 10.0;
  return grid;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

cdouble complex_from_json(const json& j, const char* key) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw std::invalid_argument(std::string(key) + ": expected number or [re, im]");
}

bool known_quantity(const std::string& q) {
  return std::find(kAllQuantities.begin(), kAllQuantities.end(), q) !=
         kAllQuantities.end();
}

double compute_quantity(const std::string& q, const TwoModeKet& psi) {
  if (q == "S_M") return linear_entropy(dephase_n(psi));
  if (q == "S_N") return linear_entropy(dephase_m(psi));
  if (q == "S_embedded") return embedded_entropy(embed_gram(psi));
  if (q == "S_a") {
    const AtomicReduction red = project_and_reduce(evolve_atoms(psi), psi);
    return atomic_linear_entropy(std::span<const cdouble, 4>(red.atom_state));
  }
  if (q == "covariance") return covariance_witness(psi, NumberOperatorKind::Sz).value;
  if (q == "higher_moment") return higher_moment_witness(psi);
  throw std::invalid_argument("unknown quantity '" + q + "'");
}

/// Closed-form reference for the quantity on this state family, when one
/// exists. alpha1/alpha2 matter only for the coherent covariance.
std::optional<double> quantity_oracle(const SweepConfig& cfg, const std::string& q,
                                      double nbar, cdouble alpha1, cdouble alpha2) {
  switch (cfg.state_kind) {
    case StateKind::CoherentPair:
      if (q == "S_M") return coherent_sm_oracle(nbar);
      if (q == "S_a") return coherent_sa_oracle(nbar);
      if (q == "covariance") return std::norm(alpha1) - std::norm(alpha2);
      return std::nullopt;
    case StateKind::Tmsv:
      if (q == "S_M") return tmsv_sm_oracle(nbar);
      if (q == "S_N" || q == "S_embedded" || q == "S_a" || q == "covariance")
        return 0.0;
      if (q == "higher_moment") return tmsv_higher_moment_oracle(nbar);
      return std::nullopt;
    case StateKind::CustomFile:
      return std::nullopt;
  }
  return std::nullopt;
}

struct SweepPoint {
  double nbar;
  TwoModeKet psi;
  cdouble alpha1, alpha2;  // coherent only, for the covariance reference
};

std::vector<SweepPoint> build_points(const SweepConfig& cfg) {
  std::vector<SweepPoint> points;
  const auto cutoff_for = [&cfg](double nbar) {
    if (cfg.fixed_cutoff) return *cfg.fixed_cutoff;
    return cfg.state_kind == StateKind::Tmsv ? tmsv_cutoff_for(nbar, cfg.eps_trunc)
                                             : coherent_cutoff_for(nbar, cfg.eps_trunc);
  };

  switch (cfg.state_kind) {
    case StateKind::CoherentPair: {
      if (cfg.alpha1 || cfg.alpha2) {
        const cdouble a1 = cfg.alpha1.value_or(cdouble{});
        const cdouble a2 = cfg.alpha2.value_or(cdouble{});
        const double nbar = std::norm(a1) + std::norm(a2);
        points.push_back(
            {nbar, coherent_pair(a1, a2, cutoff_for(nbar), cfg.eps_trunc), a1, a2});
        break;
      }
      const auto grid = cfg.nbar_grid.empty() ? default_nbar_grid() : cfg.nbar_grid;
      for (double nbar : grid) {
        const cdouble a = std::sqrt(nbar / 2.0);
        points.push_back(
            {nbar, coherent_pair(a, a, cutoff_for(nbar), cfg.eps_trunc), a, a});
      }
      break;
    }
    case StateKind::Tmsv: {
      if (cfg.xi) {
        const TmsvParam p{*cfg.xi};
        const double nbar = p.nbar();
        points.push_back({nbar, tmsv(p, cutoff_for(nbar), cfg.eps_trunc), {}, {}});
        break;
      }
      const auto grid = cfg.nbar_grid.empty() ? default_nbar_grid() : cfg.nbar_grid;
      for (double nbar : grid) {
        const TmsvParam p = TmsvParam::from_nbar(nbar);
        points.push_back({nbar, tmsv(p, cutoff_for(nbar), cfg.eps_trunc), {}, {}});
      }
      break;
    }
    case StateKind::CustomFile: {
      std::ifstream in(cfg.state_file);
      if (!in) throw std::runtime_error("cannot open state file '" + cfg.state_file + "'");
      json j;
      try {
        j = json::parse(in);
      } catch (const json::parse_error& e) {
        throw std::invalid_argument("state file '" + cfg.state_file + "': " + e.what());
      }
      TwoModeKet psi = state_from_json(j);
      // The quantities assume a normalized state. Accept tiny deficits as
      // truncation, fix mild ones, reject the rest.
      if (psi.tail_bound() > 1e-6)
        throw std::invalid_argument("state file '" + cfg.state_file +
                                    "' is not normalized (|1 - norm^2| = " +
                                    fmt(psi.tail_bound()) + ")");
      if (psi.tail_bound() > cfg.eps_trunc) psi.normalize();
      points.push_back({mean_total_number(psi), std::move(psi), {}, {}});
      break;
    }
  }
  return points;
}

void validate_config(const SweepConfig& cfg) {
  for (const auto& q : cfg.quantities)
    if (!known_quantity(q)) throw std::invalid_argument("unknown quantity '" + q + "'");
  if (cfg.state_kind == StateKind::CustomFile && cfg.state_file.empty())
    throw std::invalid_argument("custom_file sweeps need a state file");
  if (cfg.state_kind != StateKind::CustomFile && !cfg.state_file.empty())
    throw std::invalid_argument("state files only apply to custom_file sweeps");
  if (!(cfg.eps_trunc > 0.0))
    throw std::invalid_argument("eps_trunc must be positive");
  if (cfg.fixed_cutoff && *cfg.fixed_cutoff < 0)
    throw std::invalid_argument("cutoff must be nonnegative");
  for (double nbar : cfg.nbar_grid)
    if (!(nbar >= 0.0)) throw std::invalid_argument("nbar grid values must be >= 0");
  if (cfg.xi && cfg.state_kind != StateKind::Tmsv)
    throw std::invalid_argument("xi only applies to tmsv sweeps");
  if ((cfg.alpha1 || cfg.alpha2) && cfg.state_kind != StateKind::CoherentPair)
    throw std::invalid_argument("alpha1/alpha2 only apply to coherent_pair sweeps");
}

}  // namespace

SweepConfig sweep_config_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
  SweepConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "state_kind") cfg.state_kind = state_kind_from_string(value.get<std::string>());
    else if (key == "nbar_grid") cfg.nbar_grid = value.get<std::vector<double>>();
    else if (key == "alpha1") cfg.alpha1 = complex_from_json(value, "alpha1");
    else if (key == "alpha2") cfg.alpha2 = complex_from_json(value, "alpha2");
    else if (key == "xi") cfg.xi = complex_from_json(value, "xi");
    else if (key == "state_file") cfg.state_file = value.get<std::string>();
    else if (key == "quantities") cfg.quantities = value.get<std::vector<std::string>>();
    else if (key == "cutoff") cfg.fixed_cutoff = value.get<int>();
    else if (key == "eps_trunc") cfg.eps_trunc = value.get<double>();
    else if (key == "out") cfg.output_path = value.get<std::string>();
    else if (key == "format") cfg.format = output_format_from_string(value.get<std::string>());
    else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
    else throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  return cfg;
}

json sweep_config_to_json(const SweepConfig& cfg) {
  json j{{"state_kind", to_string(cfg.state_kind)},
         {"eps_trunc", cfg.eps_trunc},
         {"format", to_string(cfg.format)},
         {"seed", cfg.seed}};
  j["nbar_grid"] = cfg.nbar_grid.empty() ? default_nbar_grid() : cfg.nbar_grid;
  j["quantities"] = cfg.quantities.empty()
                        ? std::vector<std::string>(kAllQuantities.begin(), kAllQuantities.end())
                        : cfg.quantities;
  if (cfg.alpha1) j["alpha1"] = {cfg.alpha1->real(), cfg.alpha1->imag()};
  if (cfg.alpha2) j["alpha2"] = {cfg.alpha2->real(), cfg.alpha2->imag()};
  if (cfg.xi) j["xi"] = {cfg.xi->real(), cfg.xi->imag()};
  if (!cfg.state_file.empty()) j["state_file"] = cfg.state_file;
  if (cfg.fixed_cutoff) j["cutoff"] = *cfg.fixed_cutoff;
  if (!cfg.output_path.empty()) j["out"] = cfg.output_path;
  return j;
}

int run_sweep(const SweepConfig& cfg, std::ostream& out, std::ostream& diag) {
  try {
    validate_config(cfg);
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return 1;
  }

  const std::vector<std::string> quantities =
      cfg.quantities.empty()
          ? std::vector<std::string>(kAllQuantities.begin(), kAllQuantities.end())
          : cfg.quantities;

  try {
    const std::vector<SweepPoint> points = build_points(cfg);

    std::ofstream file;
    if (!cfg.output_path.empty()) {
      file.open(cfg.output_path);
      if (!file) throw std::runtime_error("cannot write '" + cfg.output_path + "'");
    }
    std::ostream& os = cfg.output_path.empty() ? out : file;

    // Column layout is fixed by the first point; oracle availability depends
    // only on (state_kind, quantity), so it is uniform across rows.
    json rows = json::array();
    std::ostringstream header;
    header << "nbar";
    for (const auto& q : quantities) {
      header << "," << q;
      if (quantity_oracle(cfg, q, 0.0, {}, {})) header << "," << q << "_oracle," << q << "_absdiff";
    }

    std::vector<std::string> csv_lines;
    for (const auto& pt : points) {
      std::ostringstream line;
      line << fmt(pt.nbar);
      json row{{"nbar", pt.nbar}};
      for (const auto& q : quantities) {
        const double v = compute_quantity(q, pt.psi);
        line << "," << fmt(v);
        row[q] = v;
        const auto ref = quantity_oracle(cfg, q, pt.nbar, pt.alpha1, pt.alpha2);
        if (ref) {
          line << "," << fmt(*ref) << "," << fmt(std::abs(v - *ref));
          row[q + "_oracle"] = *ref;
          row[q + "_absdiff"] = std::abs(v - *ref);
        }
      }
      csv_lines.push_back(line.str());
      rows.push_back(std::move(row));
    }

    if (cfg.format == OutputFormat::Csv) {
      os << header.str() << "\n";
      for (const auto& l : csv_lines) os << l << "\n";
    } else {
      json doc{{"config", sweep_config_to_json(cfg)}, {"rows", std::move(rows)}};
      os << doc.dump(2) << "\n";
    }
    os.flush();
    if (!os) throw std::runtime_error("write failed");
    return 0;
  } catch (const std::invalid_argument& e) {
    diag << "error: " << e.what() << "\n";
    return 1;
  } catch (const CutoffError& e) {
    diag << "error: " << e.what() << "; smallest adequate cutoff is "
         << e.suggested_cutoff() << "\n";
    return 2;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return 2;
  }
}

json report_state(const TwoModeKet& psi) {
  const DephasedDensity rho_n = dephase_n(psi);
  const DephasedDensity rho_m = dephase_m(psi);

  json weights_n = json::array();
  for (const auto& c : rho_n.components)
    weights_n.push_back({{"n", c.label}, {"p", c.weight}});
  json weights_m = json::array();
  for (const auto& c : rho_m.components)
    weights_m.push_back({{"twoM", c.label}, {"p", c.weight}});

  const auto [p_even, p_odd] = parity_weights(psi);
  const AtomicReduction red = project_and_reduce(evolve_atoms(psi), psi);
  const EmbeddedGram gram = embed_gram(psi);

  return json{
      {"cutoff", psi.cutoff()},
      {"norm", std::sqrt(psi.norm2())},
      {"tail_bound", psi.tail_bound()},
      {"mean_N", mean_total_number(psi)},
      {"block_weights_n", std::move(weights_n)},
      {"block_weights_twoM", std::move(weights_m)},
      {"S_M", linear_entropy(rho_n)},
      {"S_N", linear_entropy(rho_m)},
      {"S_embedded", embedded_entropy(gram)},
      {"gram_dim", gram.dim()},
      {"gram_min_eigenvalue", gram_min_eigenvalue(gram)},
      {"stokes", to_json(stokes_report(psi))},
      {"parity", {{"even", p_even}, {"odd", p_odd}}},
      {"S_a", atomic_linear_entropy(std::span<const cdouble, 4>(red.atom_state))},
  };
}

int run_selftest(std::uint64_t seed, std::ostream& out) {
  int failures = 0;
  const auto check = [&](const std::string& name, bool ok, double detail) {
    out << (ok ? "ok   " : "FAIL ") << name;
    if (!ok) out << "  (" << fmt(detail) << ")";
    out << "\n";
    if (!ok) ++failures;
  };

  using Op = NumberOperatorKind;

  // Operator algebra on a small full matrix representation.
  {
    const int c = 8;
    const auto n = operator_matrix(Op::NTotal, c);
    const auto sx = operator_matrix(Op::Sx, c);
    const auto sy = operator_matrix(Op::Sy, c);
    const auto sz = operator_matrix(Op::Sz, c);
    const double comm_n = ((n * sx - sx * n).cwiseAbs().maxCoeff());
    const double comm_xy =
        ((sx * sy - sy * sx - cdouble(0, 2) * sz).cwiseAbs().maxCoeff());
    check("commutators", comm_n <= 1e-12 && comm_xy <= 1e-12,
          std::max(comm_n, comm_xy));
  }

  // Dephasing entropies against their closed forms.
  for (double nbar : {0.5, 2.0}) {
    const cdouble a = std::sqrt(nbar / 2.0);
    const TwoModeKet psi = coherent_pair(a, a, coherent_cutoff_for(nbar));
    const double diff =
        std::abs(linear_entropy(dephase_n(psi)) - coherent_sm_oracle(nbar));
    check("S_M coherent nbar=" + fmt(nbar), diff < 1e-8, diff);
  }
  for (double nbar : {0.5, 2.0}) {
    const TwoModeKet psi = tmsv(TmsvParam::from_nbar(nbar), tmsv_cutoff_for(nbar));
    const double diff_m =
        std::abs(linear_entropy(dephase_n(psi)) - tmsv_sm_oracle(nbar));
    const double s_n = linear_entropy(dephase_m(psi));
    check("S_M tmsv nbar=" + fmt(nbar), diff_m < 1e-8, diff_m);
    check("S_N tmsv nbar=" + fmt(nbar), s_n < 1e-12, s_n);
  }

  // Probe-atom entropy against tanh^2(2 nbar).
  {
    const double nbar = 1.0;
    const cdouble a = std::sqrt(nbar / 2.0);
    const TwoModeKet psi = coherent_pair(a, a, coherent_cutoff_for(nbar));
    const auto [pe, po] = parity_weights(psi);
    const double diff = std::abs(atomic_linear_entropy(pe, po) - coherent_sa_oracle(nbar));
    check("S_a coherent nbar=1", diff < 1e-8, diff);
  }

  // Dephased entropy dominates the embedded one; equality when mode 2 is empty.
  {
    const TwoModeKet psi = coherent_pair(1.0, 1.0, coherent_cutoff_for(2.0));
    const double sm = linear_entropy(dephase_n(psi));
    const double se = embedded_entropy(embed_gram(psi));
    check("embedding ordering", sm - se >= -1e-10, sm - se);
    const TwoModeKet one_mode = coherent_pair(std::sqrt(2.0), 0.0, coherent_cutoff_for(2.0));
    const double gap = std::abs(linear_entropy(dephase_n(one_mode)) -
                                embedded_entropy(embed_gram(one_mode)));
    check("embedding equality (empty mode)", gap < 1e-10, gap);
  }

  // Covariance identity cov(N, Sz) = var(n1) - var(n2) on random states.
  {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
      const TwoModeKet psi = random_pure(seed + i, 10);
      const double lhs = covariance_witness(psi, Op::Sz).value;
      const double rhs = self_covariance(psi, Op::N1) - self_covariance(psi, Op::N2);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    check("covariance identity", worst < 1e-10, worst);
  }

  // Pointer readings reproduce direct moments for commuting pairs.
  {
    double worst = 0.0;
    for (int i = 0; i < 2; ++i) {
      const TwoModeKet psi = random_pure(seed + 100 + i, 8);
      const PointerMoments m = pointer_joint_measure(psi, Op::Sz, Op::NTotal);
      const double direct = expectation({Op::Sz, Op::NTotal}, psi).real();
      worst = std::max(worst, std::abs(m.mean_ap - direct));
      worst = std::max(worst, std::abs(m.mean_p - expectation({Op::Sz}, psi).real()));
    }
    check("pointer identities", worst < 1e-10, worst);
  }

  // Squeezed-vacuum Stokes moments against their closed forms.
  {
    const double nbar = 2.0;
    const TwoModeKet psi = tmsv(TmsvParam::from_nbar(nbar), tmsv_cutoff_for(nbar));
    const double sx2 = expectation({Op::Sx, Op::Sx}, psi).real();
    const double nsx2 = expectation({Op::Sx, Op::Sx, Op::NTotal}, psi).real();
    const double w = higher_moment_witness(psi);
    const double worst = std::max({std::abs(sx2 - tmsv_sx2_oracle(nbar)),
                                   std::abs(nsx2 - tmsv_n_sx2_oracle(nbar)),
                                   std::abs(w - tmsv_higher_moment_oracle(nbar))});
    check("tmsv Stokes moments", worst < 1e-8 * tmsv_n_sx2_oracle(nbar), worst);
  }

  out << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
  return failures == 0 ? 0 : 2;
}

}  // namespace nphase
