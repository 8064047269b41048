#pragma once

#include <iosfwd>

#include "json.hpp"

#include "cuttree/fast_gh.hpp"

namespace cuttree {

nlohmann::json to_json(const FlowStats& s);
nlohmann::json to_json(const AlgoParams& p);
nlohmann::json to_json(const RunManifest& m);

/// Deterministic (key-sorted, no timing) rendering, newline terminated.
void write_manifest(std::ostream& out, const RunManifest& m);

}  // namespace cuttree
