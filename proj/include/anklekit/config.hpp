#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "anklekit/control.hpp"
#include "anklekit/design.hpp"
#include "anklekit/gait.hpp"
#include "anklekit/mech.hpp"
#include "anklekit/sysid.hpp"

namespace anklekit::config {

using Json = nlohmann::ordered_json;

// Scenario kinds the toolkit executes. `validate` and `report` are CLI verbs
// layered on top of these.
extern const std::vector<std::string> kKinds; // simulate design sysid control battery

struct ScenarioConfig {
    Json root;
    std::string path;     // where it was loaded from ("" for in-memory)
    std::string base_dir; // directory of `path`
    std::string data_dir; // fixture directory (flag / ANKLE_KIT_DATA / built-in)

    std::string kind() const;
    std::string id() const;

    // Resolution order: absolute, relative to the config file, relative to
    // the fixture directory.
    std::string resolve_path(const std::string& name) const;
};

ScenarioConfig load_config(const std::string& path, const std::string& data_dir);
ScenarioConfig config_from_json(const Json& root, const std::string& data_dir);

// Full schema / invariant sweep without executing anything. Returns every
// violation found, one message each.
std::vector<std::string> validate_config(const ScenarioConfig& cfg);

// Canonical byte serialization of the resolved config; its FNV-1a hash is
// the run's replay key.
std::string canonical_config_text(const ScenarioConfig& cfg, std::uint64_t seed,
                                  double grid_step_percent);
std::string fnv1a_hex(const std::string& bytes);

// --- typed extraction (throws ConfigError on missing/invalid fields) --------

double require_number(const Json& j, const std::string& key);
double number_or(const Json& j, const std::string& key, double fallback);
std::string require_string(const Json& j, const std::string& key);

mech::DfGeometry df_geometry_from(const Json& df);       // geometry fields only
mech::ParallelSpringPair spring_pair_from(const Json& df);
mech::EesMechanism ees_from(const Json& ees);
mech::ResetSpringDesign reset_from(const Json& reset);
sysid::ChirpSpec chirp_from(const Json& chirp);
sysid::SecondOrderTf tf_from(const Json& tf);
control::PidGains gains_from(const Json& gains);
control::DobConfig dob_from(const Json& dob);
design::BatterySpec battery_spec_from(const Json& pack);
gait::GaitProfile load_profile(const ScenarioConfig& cfg);

} // namespace anklekit::config
