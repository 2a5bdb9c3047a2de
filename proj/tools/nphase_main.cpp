#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nphase/cli.hpp"
#include "nphase/serialize.hpp"
#include "nphase/states.hpp"

namespace {

using nphase::cdouble;

cdouble parse_complex(const std::string& s) {
  const auto fail = [&s]() -> cdouble {
    throw CLI::ValidationError("expected 're' or 're,im', got '" + s + "'");
  };
  try {
    const auto comma = s.find(',');
    std::size_t pos = 0;
    if (comma == std::string::npos) {
      const double re = std::stod(s, &pos);
      if (pos != s.size()) return fail();
      return {re, 0.0};
    }
    const std::string a = s.substr(0, comma);
    const std::string b = s.substr(comma + 1);
    std::size_t pa = 0, pb = 0;
    const double re = std::stod(a, &pa);
    const double im = std::stod(b, &pb);
    if (pa != a.size() || pb != b.size()) return fail();
    return {re, im};
  } catch (const CLI::ValidationError&) {
    throw;
  } catch (const std::exception&) {
    return fail();
  }
}

std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> grid;
  try {
    if (s.find(':') != std::string::npos) {
      // start:stop:step, stop inclusive up to rounding slack
      const auto c1 = s.find(':');
      const auto c2 = s.find(':', c1 + 1);
      if (c2 == std::string::npos) throw std::invalid_argument("");
      const double start = std::stod(s.substr(0, c1));
      const double stop = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
      const double step = std::stod(s.substr(c2 + 1));
      if (!(step > 0.0) || stop < start) throw std::invalid_argument("");
      for (int i = 0;; ++i) {
        const double v = start + i * step;
        if (v > stop + step * 1e-9) break;
        grid.push_back(v);
      }
      return grid;
    }
    std::size_t begin = 0;
    while (begin <= s.size()) {
      const auto comma = s.find(',', begin);
      const std::string tok =
          s.substr(begin, comma == std::string::npos ? std::string::npos : comma - begin);
      std::size_t pos = 0;
      grid.push_back(std::stod(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument("");
      if (comma == std::string::npos) break;
      begin = comma + 1;
    }
    return grid;
  } catch (const std::exception&) {
    throw CLI::ValidationError("expected 'a,b,c' or 'start:stop:step', got '" + s + "'");
  }
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  while (begin <= s.size()) {
    const auto comma = s.find(',', begin);
    out.push_back(
        s.substr(begin, comma == std::string::npos ? std::string::npos : comma - begin));
    if (comma == std::string::npos) break;
    begin = comma + 1;
  }
  return out;
}

int write_doc(const nlohmann::json& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << doc.dump(2) << "\n";
    return 0;
  }
  std::ofstream f(out_path);
  if (!f) {
    std::cerr << "error: cannot write '" << out_path << "'\n";
    return 2;
  }
  f << doc.dump(2) << "\n";
  f.flush();
  return f ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nphase: number-phase correlation toolkit for two-mode states"};
  app.require_subcommand(1);

  std::string kind = "coherent_pair", config_path, state_path, out_path;
  std::string alpha1_s, alpha2_s, xi_s, grid_s, quantities_s, format_s;
  int cutoff = -1;
  double eps = nphase::kDefaultTruncationEps;
  std::uint64_t seed = 0;

  CLI::App* sweep = app.add_subcommand(
      "sweep", "scan a state family; each quantity column comes with its "
               "closed-form reference and the absolute difference where one exists");
  sweep->add_option("kind", kind, "state family")
      ->check(CLI::IsMember({"coherent_pair", "tmsv", "custom_file"}));
  sweep->add_option("--config", config_path,
                    "JSON config mirroring the sweep options; explicit flags override");
  sweep->add_option("--state", state_path, "custom state JSON file (implies custom_file)");
  sweep->add_option("--alpha1", alpha1_s, "coherent amplitude of mode 1, 're' or 're,im'");
  sweep->add_option("--alpha2", alpha2_s, "coherent amplitude of mode 2");
  sweep->add_option("--xi", xi_s, "squeezed-vacuum parameter, |xi| < 1");
  sweep->add_option("--nbar-grid", grid_s, "'a,b,c' or 'start:stop:step' (default 0:5:0.1)");
  sweep->add_option("--quantities", quantities_s,
                    "comma list from: S_M S_N S_embedded S_a covariance higher_moment");
  sweep->add_option("--cutoff", cutoff, "fixed photon-number cutoff (default: automatic)");
  sweep->add_option("--eps-trunc", eps, "allowed truncated probability mass");
  sweep->add_option("--out", out_path, "output path (default stdout)");
  sweep->add_option("--format", format_s, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--seed", seed, "seed recorded in the config echo");

  CLI::App* report = app.add_subcommand("report", "full diagnostic JSON for one state");
  report->add_option("--state", state_path, "state JSON file");
  report->add_option("--alpha1", alpha1_s, "coherent amplitude of mode 1");
  report->add_option("--alpha2", alpha2_s, "coherent amplitude of mode 2");
  report->add_option("--xi", xi_s, "squeezed-vacuum parameter");
  report->add_option("--cutoff", cutoff, "photon-number cutoff (default: automatic)");
  report->add_option("--eps-trunc", eps, "allowed truncated probability mass");
  report->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* selftest =
      app.add_subcommand("selftest", "oracle-versus-numeric consistency checks");
  selftest->add_option("--seed", seed, "seed for the randomized checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (app.got_subcommand(selftest)) return nphase::run_selftest(seed, std::cout);

    if (app.got_subcommand(sweep)) {
      nphase::SweepConfig cfg;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
          std::cerr << "error: cannot open config '" << config_path << "'\n";
          return 1;
        }
        cfg = nphase::sweep_config_from_json(nlohmann::json::parse(in));
      }
      if (sweep->count("kind")) cfg.state_kind = nphase::state_kind_from_string(kind);
      if (sweep->count("--state")) {
        cfg.state_file = state_path;
        if (!sweep->count("kind")) cfg.state_kind = nphase::StateKind::CustomFile;
      }
      if (sweep->count("--alpha1")) cfg.alpha1 = parse_complex(alpha1_s);
      if (sweep->count("--alpha2")) cfg.alpha2 = parse_complex(alpha2_s);
      if (sweep->count("--xi")) {
        cfg.xi = parse_complex(xi_s);
        if (!sweep->count("kind") && config_path.empty())
          cfg.state_kind = nphase::StateKind::Tmsv;
      }
      if (sweep->count("--nbar-grid")) cfg.nbar_grid = parse_grid(grid_s);
      if (sweep->count("--quantities")) cfg.quantities = split_commas(quantities_s);
      if (sweep->count("--cutoff")) cfg.fixed_cutoff = cutoff;
      if (sweep->count("--eps-trunc")) cfg.eps_trunc = eps;
      if (sweep->count("--out")) cfg.output_path = out_path;
      if (sweep->count("--format")) cfg.format = nphase::output_format_from_string(format_s);
      if (sweep->count("--seed")) cfg.seed = seed;
      return nphase::run_sweep(cfg, std::cout, std::cerr);
    }

    // report
    const bool have_file = report->count("--state") > 0;
    const bool have_alpha = report->count("--alpha1") || report->count("--alpha2");
    const bool have_xi = report->count("--xi") > 0;
    if (have_file + have_alpha + have_xi != 1) {
      std::cerr << "error: report needs exactly one of --state, --alpha1/--alpha2, --xi\n";
      return 1;
    }

    nphase::TwoModeKet psi(0);
    if (have_file) {
      std::ifstream in(state_path);
      if (!in) {
        std::cerr << "error: cannot open state file '" << state_path << "'\n";
        return 2;
      }
      psi = nphase::state_from_json(nlohmann::json::parse(in));
      if (psi.tail_bound() > 1e-6) {
        std::cerr << "error: state is not normalized (|1 - norm^2| = "
                  << psi.tail_bound() << ")\n";
        return 1;
      }
      if (psi.tail_bound() > eps) psi.normalize();
    } else if (have_alpha) {
      const cdouble a1 = report->count("--alpha1") ? parse_complex(alpha1_s) : cdouble{};
      const cdouble a2 = report->count("--alpha2") ? parse_complex(alpha2_s) : cdouble{};
      const double nbar = std::norm(a1) + std::norm(a2);
      const int c = cutoff >= 0 ? cutoff : nphase::coherent_cutoff_for(nbar, eps);
      psi = nphase::coherent_pair(a1, a2, c, eps);
    } else {
      const nphase::TmsvParam p{parse_complex(xi_s)};
      const int c = cutoff >= 0 ? cutoff : nphase::tmsv_cutoff_for(p.nbar(), eps);
      psi = nphase::tmsv(p, c, eps);
    }
    return write_doc(nphase::report_state(psi), out_path);
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nphase::CutoffError& e) {
    std::cerr << "error: " << e.what() << "; smallest adequate cutoff is "
              << e.suggested_cutoff() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
