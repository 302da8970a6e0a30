#pragma once

#include <string>
#include <string_view>

#include "mcalloc/scenario.hpp"

namespace mcalloc {

// JSON scenario document with top-level keys
//   seed, case, params, base_stations, channels, tenants, rician_mask
// Distances in meters, powers in dBm, capacities in Mbps, mask entries are
// linear Rician factors. Doubles are written with round-trip precision.
std::string scenario_to_json(const Scenario& scenario, int indent = 2);
Scenario scenario_from_json(std::string_view text);

}  // namespace mcalloc
