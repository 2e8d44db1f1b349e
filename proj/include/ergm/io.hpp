#pragma once

#include <string>

#include <json.hpp>

#include "ergm/ergm_spec.hpp"
#include "ergm/fixed_point.hpp"
#include "ergm/motif.hpp"

namespace ergm {

/// {"name": "edge"|"two_star"|"triangle"|"rectangle"} or
/// {"v": k, "edges": [[i, j], ...]}.
Motif motif_from_json(const nlohmann::json& j);
nlohmann::json motif_to_json(const Motif& m);

/// {"terms": [{"motif": {...}, "beta": r}, ...]}
ErgmSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const ErgmSpec& spec);
ErgmSpec load_spec(const std::string& path);

nlohmann::json to_json(const FixedPointReport& r);

/// Round-trip (17 significant digit) decimal form used in every CSV cell.
std::string format_number(double x);

}  // namespace ergm
