#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "vocleap/evolver.hpp"

namespace vocleap {

/// Flat JSON object mirroring the RunConfig field names.
nlohmann::ordered_json run_config_to_json(const RunConfig& config);

/// Reads the fields present, keeping defaults for absent ones. Unknown keys
/// are ignored here (callers owning a whole file validate its key set).
/// Throws std::runtime_error on mistyped or out-of-range values.
RunConfig run_config_from_json(const nlohmann::json& object);

/// Field names accepted by run_config_from_json.
const std::vector<std::string>& run_config_keys();

nlohmann::ordered_json trace_to_json(const RunTrace& trace);
RunTrace trace_from_json(const nlohmann::json& object);

/// Write-then-rename; throws std::runtime_error on IO failure.
void save_trace(const RunTrace& trace, const std::filesystem::path& file);
RunTrace load_trace(const std::filesystem::path& file);

/// Maps an id to a safe filename fragment: [A-Za-z0-9._-] kept, the rest
/// replaced with '_', empty input becomes "_".
std::string filename_component(const std::string& id);

}  // namespace vocleap
