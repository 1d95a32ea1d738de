#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "anklekit/config.hpp"

namespace anklekit::scenario {

struct RunOptions {
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    double grid_step_percent = 0.0; // 0 = config / built-in default
    std::string data_dir;           // "" = ANKLE_KIT_DATA or compiled default
};

struct RunReport {
    std::string scenario_id;
    std::string kind;
    std::string toolkit_version;
    std::string config_hash; // FNV-1a of the serialized resolved config
    std::uint64_t seed = 0;
    config::Json metrics;
    std::vector<std::string> artifacts;   // paths written under out_dir
    std::vector<std::string> diagnostics; // validate output
};

// Fixture directory resolution: explicit option, then ANKLE_KIT_DATA, then
// the compiled-in default (empty when unset).
std::string resolve_data_dir(const std::string& explicit_dir);

// Executes one scenario config. `kind` may be empty to trust the config's
// own kind; a non-empty kind must match. Artifacts land in options.out_dir.
RunReport run_scenario(const std::string& kind, const std::string& config_path,
                       const RunOptions& options);

// Schema/invariant check without execution.
RunReport validate_scenario(const std::string& config_path, const RunOptions& options);

// Runs the whole shipped scenario set (used by the `report` CLI verb).
RunReport run_report_suite(const RunOptions& options);

} // namespace anklekit::scenario
