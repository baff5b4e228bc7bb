#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "hypdyn/measure.hpp"
#include "hypdyn/orbit.hpp"

namespace hypdyn {

using nlohmann::json;

// Orbit schema: {"points": [[x,y,...],...], "jacobians": [[row-major d*d],...],
// "period": n | null}. Binary-free by construction.
json orbit_to_json(const OrbitSegment& orbit);
OrbitSegment orbit_from_json(const json& j);

json measure_to_json(const EmpiricalMeasure& mu);
EmpiricalMeasure measure_from_json(const json& j);

// Serializer with floats printed to 17 significant digits: identical trees
// produce byte-identical text, and every double round-trips.
std::string dump_17(const json& j, int indent = 2);

}  // namespace hypdyn
