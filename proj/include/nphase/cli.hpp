#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nphase/fock.hpp"

namespace nphase {

enum class StateKind { CoherentPair, Tmsv, CustomFile };
enum class OutputFormat { Csv, Json };

const char* to_string(StateKind kind) noexcept;
const char* to_string(OutputFormat format) noexcept;
StateKind state_kind_from_string(const std::string& name);
OutputFormat output_format_from_string(const std::string& name);

/// Quantity names accepted by sweeps, in emission order.
inline constexpr std::array<const char*, 6> kAllQuantities = {
    "S_M", "S_N", "S_embedded", "S_a", "covariance", "higher_moment"};

/// nbar = 0, 0.1, ..., 5.0.
std::vector<double> default_nbar_grid();

/// Everything a sweep needs. Coherent sweeps use the balanced split
/// alpha1 = alpha2 = sqrt(nbar/2) unless explicit amplitudes pin a single
/// point; explicit xi does the same for squeezed vacuum. Custom files always
/// produce a single row.
struct SweepConfig {
  StateKind state_kind = StateKind::CoherentPair;
  std::vector<double> nbar_grid;          // empty = default_nbar_grid()
  std::optional<cdouble> alpha1;
  std::optional<cdouble> alpha2;
  std::optional<cdouble> xi;
  std::string state_file;
  std::vector<std::string> quantities;    // empty = all of kAllQuantities
  std::optional<int> fixed_cutoff;        // empty = auto from eps_trunc
  double eps_trunc = kDefaultTruncationEps;
  std::string output_path;                // empty = the stream handed to run_sweep
  OutputFormat format = OutputFormat::Csv;
  std::uint64_t seed = 0;                 // consumed by selftest's random checks
};

/// Parses a config object with exactly the SweepConfig field names; unknown
/// keys are rejected so typos fail loudly.
SweepConfig sweep_config_from_json(const nlohmann::json& j);
nlohmann::json sweep_config_to_json(const SweepConfig& cfg);

/// Runs the sweep and writes CSV or JSON rows (value, closed-form reference
/// and absolute difference per quantity that has a reference) to
/// cfg.output_path or `out`. Returns 0 on success, 1 for configuration
/// errors, 2 for numeric or I/O failures; diagnostics go to `diag`.
int run_sweep(const SweepConfig& cfg, std::ostream& out, std::ostream& diag);

/// Single-state diagnostic: norm, mean photon number, block weights in both
/// labels, the entropy measures, Stokes moments and the two-atom probe
/// entropy, as one JSON object.
nlohmann::json report_state(const TwoModeKet& psi);

/// Oracle-versus-numeric consistency checks; one "ok"/"FAIL" line each.
/// Returns 0 when everything passes, 2 otherwise.
int run_selftest(std::uint64_t seed, std::ostream& out);

}  // namespace nphase
