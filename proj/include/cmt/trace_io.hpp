#pragma once

// JSON form of trajectories:
//   { "schema_version": 1,
//     "states":  [ { "mental": { "ne": "high", ... }, "env": { "door": true } }, ... ],
//     "actions": [ [ "commitment" ], [], ... ],
//     "provenance": [ [ { "slot": "ne", "cause": "inertia" }, ... ], ... ] }
// "env" and "provenance" are optional on input.

#include "cmt/engine.hpp"

#include <json.hpp>

#include <string>

namespace cmt
{

inline constexpr int trace_schema_version = 1;

[[nodiscard]] nlohmann::ordered_json trajectory_to_json( const compiled_domain& domain, const trajectory& t );

// Throws std::invalid_argument on unknown names, missing classes or a
// states/actions length mismatch.
[[nodiscard]] trajectory trajectory_from_json( const compiled_domain& domain, const nlohmann::json& j );

[[nodiscard]] trajectory read_trajectory( const compiled_domain& domain, const std::string& path );

} // namespace cmt
