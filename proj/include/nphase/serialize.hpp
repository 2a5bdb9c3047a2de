#pragma once

#include "json.hpp"
#include "nphase/fock.hpp"
#include "nphase/stokes.hpp"

namespace nphase {

/// {"cutoff": c, "amps": [[k, l, re, im], ...]} with only nonzero amplitudes
/// listed, ordered by (k + l, k). Doubles survive the round trip bit exactly.
nlohmann::json state_to_json(const TwoModeKet& psi);

/// Inverse of state_to_json. Validates shape, index ranges, duplicates and
/// finiteness; |1 - norm^2| of the parsed amplitudes is recorded as the
/// state's tail bound so callers can judge how normalized the input was.
/// Throws std::invalid_argument on malformed content.
TwoModeKet state_from_json(const nlohmann::json& j);

nlohmann::json to_json(const StokesReport& report);

}  // namespace nphase
