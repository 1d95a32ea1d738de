#include "anklekit/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "anklekit/csvio.hpp"

namespace fs = std::filesystem;

namespace anklekit::config {

const std::vector<std::string> kKinds = {"simulate", "design", "sysid", "control", "battery"};

std::string ScenarioConfig::kind() const {
    return root.contains("kind") && root["kind"].is_string() ? root["kind"].get<std::string>()
                                                             : std::string();
}

std::string ScenarioConfig::id() const {
    return root.contains("id") && root["id"].is_string() ? root["id"].get<std::string>()
                                                         : kind();
}

std::string ScenarioConfig::resolve_path(const std::string& name) const {
    if (name.empty()) return name;
    const fs::path p(name);
    if (p.is_absolute()) return name;
    if (!base_dir.empty()) {
        const fs::path candidate = fs::path(base_dir) / p;
        if (fs::exists(candidate)) return candidate.string();
    }
    if (!data_dir.empty()) {
        const fs::path candidate = fs::path(data_dir) / p;
        if (fs::exists(candidate)) return candidate.string();
    }
    return name; // leave as-is; existence is reported by validation
}

ScenarioConfig load_config(const std::string& path, const std::string& data_dir) {
    ScenarioConfig cfg;
    cfg.path = path;
    cfg.base_dir = fs::path(path).parent_path().string();
    cfg.data_dir = data_dir;
    const std::string text = csvio::read_file(path);
    try {
        cfg.root = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return cfg;
}

ScenarioConfig config_from_json(const Json& root, const std::string& data_dir) {
    ScenarioConfig cfg;
    cfg.root = root;
    cfg.data_dir = data_dir;
    return cfg;
}

namespace {

bool has_number(const Json& j, const std::string& key) {
    return j.is_object() && j.contains(key) && j[key].is_number();
}

void need_number(const Json& j, const std::string& scope, const std::string& key,
                 std::vector<std::string>& out) {
    if (!has_number(j, key)) out.push_back(scope + ": missing numeric key '" + key + "'");
}

void need_positive(const Json& j, const std::string& scope, const std::string& key,
                   std::vector<std::string>& out) {
    need_number(j, scope, key, out);
    if (has_number(j, key) && !(j[key].get<double>() > 0.0))
        out.push_back(scope + ": '" + key + "' must be positive");
}

void check_profile_fields(const ScenarioConfig& cfg, std::vector<std::string>& out) {
    const Json& j = cfg.root;
    need_positive(j, cfg.kind(), "body_mass_kg", out);
    need_positive(j, cfg.kind(), "cadence_period_s", out);
    if (!j.contains("profile_csv") || !j["profile_csv"].is_string()) {
        out.push_back(cfg.kind() + ": missing string key 'profile_csv'");
        return;
    }
    const std::string path = cfg.resolve_path(j["profile_csv"].get<std::string>());
    if (!fs::exists(path)) {
        out.push_back("profile_csv: file not found: " + path);
        return;
    }
    std::vector<std::string> csv_diags;
    csvio::parse_gait_csv(csvio::read_file(path), csv_diags);
    for (const auto& d : csv_diags) out.push_back("profile_csv: " + d);
}

void check_df(const Json& df, std::vector<std::string>& out, bool need_springs) {
    for (const char* key :
         {"m_len_m", "l_m_m", "arc_radius_m", "free_length_m"})
        need_positive(df, "df", key, out);
    need_number(df, "df", "theta_in_rad", out);
    need_number(df, "df", "theta_max_df_deg", out);
    need_number(df, "df", "theta_toe_off_deg", out);
    if (has_number(df, "theta_max_df_deg") && !(df["theta_max_df_deg"].get<double>() > 0.0))
        out.push_back("df: theta_max_df_deg must be positive");
    if (has_number(df, "theta_toe_off_deg") && !(df["theta_toe_off_deg"].get<double>() < 0.0))
        out.push_back("df: theta_toe_off_deg must be negative");
    if (has_number(df, "free_length_m") && has_number(df, "arc_radius_m") &&
        !(df["free_length_m"].get<double>() > df["arc_radius_m"].get<double>()))
        out.push_back("df: free_length_m must exceed arc_radius_m");
    if (need_springs) {
        for (const char* key : {"k1_n_per_m", "k2_n_per_m"}) need_number(df, "df", key, out);
        need_number(df, "df", "engagement_offset_m", out);
        need_positive(df, "df", "max_deflection_m", out);
    }
}

void check_ees(const Json& ees, std::vector<std::string>& out) {
    need_positive(ees, "ees", "stroke_mm", out);
    need_positive(ees, "ees", "orbital_radius_m", out);
    need_positive(ees, "ees", "theta_r_final_rad", out);
    need_number(ees, "ees", "k_es_n_per_m", out);
    if (has_number(ees, "theta_r_final_rad") &&
        !(ees["theta_r_final_rad"].get<double>() < M_PI))
        out.push_back("ees: theta_r_final_rad must be below pi");
}

} // namespace

std::vector<std::string> validate_config(const ScenarioConfig& cfg) {
    std::vector<std::string> out;
    const Json& j = cfg.root;
    if (!j.is_object()) {
        out.push_back("config root must be a JSON object");
        return out;
    }
    const std::string kind = cfg.kind();
    if (kind.empty()) {
        out.push_back("missing kind (one of simulate, design, sysid, control, battery)");
        return out;
    }
    if (std::find(kKinds.begin(), kKinds.end(), kind) == kKinds.end()) {
        out.push_back("unknown kind '" + kind + "'");
        return out;
    }

    if (kind == "simulate") {
        check_profile_fields(cfg, out);
        if (!j.contains("df") || !j["df"].is_object())
            out.push_back("simulate: missing object 'df'");
        else
            check_df(j["df"], out, true);
        if (!j.contains("ees") || !j["ees"].is_object())
            out.push_back("simulate: missing object 'ees'");
        else
            check_ees(j["ees"], out);
        if (j.contains("schedule") && j["schedule"].is_object()) {
            const Json& s = j["schedule"];
            if (has_number(s, "pushoff_onset_percent") && has_number(s, "pushoff_end_percent") &&
                !(s["pushoff_onset_percent"].get<double>() <
                  s["pushoff_end_percent"].get<double>()))
                out.push_back("schedule: push-off percents out of order");
        }
    } else if (kind == "design") {
        check_profile_fields(cfg, out);
        if (!j.contains("df") || !j["df"].is_object())
            out.push_back("design: missing object 'df'");
        else
            check_df(j["df"], out, false);
        if (j.contains("calibrate") && j["calibrate"].is_boolean() &&
            j["calibrate"].get<bool>() &&
            (!j.contains("calibrate_bounds") || !j["calibrate_bounds"].is_object()))
            out.push_back("design: calibrate mode needs object 'calibrate_bounds'");
        need_positive(j, "design", "ees_stroke_mm", out);
        need_positive(j, "design", "energy_per_step_j", out);
        need_positive(j, "design", "steps_per_charge", out);
        need_positive(j, "design", "motor_voltage_v", out);
    } else if (kind == "sysid") {
        const std::string mode =
            j.contains("mode") && j["mode"].is_string() ? j["mode"].get<std::string>() : "";
        if (mode != "synthesize" && mode != "csv" && mode != "io_csv")
            out.push_back("sysid: mode must be 'synthesize', 'csv' or 'io_csv'");
        if (!j.contains("chirp") || !j["chirp"].is_object()) {
            if (mode == "synthesize") out.push_back("sysid: missing object 'chirp'");
        } else {
            const Json& c = j["chirp"];
            need_number(c, "chirp", "amplitude_v", out);
            need_number(c, "chirp", "omega1_hz", out);
            need_number(c, "chirp", "omega2_hz", out);
            need_positive(c, "chirp", "duration_s", out);
            need_positive(c, "chirp", "dt_s", out);
            if (has_number(c, "omega2_hz") && has_number(c, "dt_s") &&
                c["omega2_hz"].get<double>() > 0.0 &&
                c["dt_s"].get<double>() > 0.5 / c["omega2_hz"].get<double>())
                out.push_back("chirp: dt_s violates the Nyquist guard for omega2_hz");
        }
        if (mode == "synthesize") {
            if (!j.contains("true_tf") || !j["true_tf"].is_object())
                out.push_back("sysid: synthesize mode needs object 'true_tf'");
        }
        if (mode == "csv") {
            for (const char* key : {"input_csv", "output_csv"}) {
                if (!j.contains(key) || !j[key].is_string()) {
                    out.push_back(std::string("sysid: missing string key '") + key + "'");
                } else {
                    const std::string p = cfg.resolve_path(j[key].get<std::string>());
                    if (!fs::exists(p)) out.push_back(std::string(key) + ": file not found: " + p);
                }
            }
        }
        if (mode == "io_csv") {
            if (!j.contains("io_csv") || !j["io_csv"].is_string()) {
                out.push_back("sysid: missing string key 'io_csv'");
            } else {
                const std::string p = cfg.resolve_path(j["io_csv"].get<std::string>());
                if (!fs::exists(p)) out.push_back("io_csv: file not found: " + p);
            }
        }
    } else if (kind == "control") {
        const std::string mode =
            j.contains("mode") && j["mode"].is_string() ? j["mode"].get<std::string>() : "";
        if (mode != "velocity" && mode != "current_ramp")
            out.push_back("control: mode must be 'velocity' or 'current_ramp'");
        if (!j.contains("plant") || !j["plant"].is_object()) {
            out.push_back("control: missing object 'plant'");
        } else {
            for (const char* key : {"b0", "a1", "a0"}) need_number(j["plant"], "plant", key, out);
            if (has_number(j["plant"], "a1") && has_number(j["plant"], "a0") &&
                (!(j["plant"]["a1"].get<double>() > 0.0) ||
                 !(j["plant"]["a0"].get<double>() > 0.0)))
                out.push_back("plant: a1 and a0 must be positive (stable class)");
        }
        if (!j.contains("gains") || !j["gains"].is_object())
            out.push_back("control: missing object 'gains'");
        else
            need_positive(j["gains"], "gains", "dt_s", out);
        if (mode == "velocity" &&
            (!j.contains("references_mm_s") || !j["references_mm_s"].is_array() ||
             j["references_mm_s"].empty()))
            out.push_back("control: velocity mode needs a non-empty 'references_mm_s' array");
        if (mode == "current_ramp" && (!j.contains("ramp") || !j["ramp"].is_object()))
            out.push_back("control: current_ramp mode needs object 'ramp'");
    } else if (kind == "battery") {
        need_positive(j, "battery", "energy_per_step_j", out);
        need_positive(j, "battery", "steps", out);
        need_positive(j, "battery", "nominal_voltage_v", out);
    }
    return out;
}

std::string canonical_config_text(const ScenarioConfig& cfg, std::uint64_t seed,
                                  double grid_step_percent) {
    Json resolved = cfg.root;
    resolved["seed"] = seed;
    if (grid_step_percent > 0.0) resolved["grid_step_percent"] = grid_step_percent;
    return resolved.dump(2) + "\n";
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// --- typed extraction ---------------------------------------------------------

double require_number(const Json& j, const std::string& key) {
    if (!has_number(j, key)) throw ConfigError("missing numeric key '" + key + "'");
    return j[key].get<double>();
}

double number_or(const Json& j, const std::string& key, double fallback) {
    return has_number(j, key) ? j[key].get<double>() : fallback;
}

std::string require_string(const Json& j, const std::string& key) {
    if (!j.is_object() || !j.contains(key) || !j[key].is_string())
        throw ConfigError("missing string key '" + key + "'");
    return j[key].get<std::string>();
}

mech::DfGeometry df_geometry_from(const Json& df) {
    mech::DfGeometry g;
    g.m_len = require_number(df, "m_len_m");
    g.l_m = require_number(df, "l_m_m");
    g.theta_in = require_number(df, "theta_in_rad");
    g.arc_radius = require_number(df, "arc_radius_m");
    g.free_length = require_number(df, "free_length_m");
    return g;
}

mech::ParallelSpringPair spring_pair_from(const Json& df) {
    mech::ParallelSpringPair pair;
    pair.k1 = require_number(df, "k1_n_per_m");
    pair.k2 = require_number(df, "k2_n_per_m");
    pair.engagement_offset = require_number(df, "engagement_offset_m");
    pair.max_deflection = require_number(df, "max_deflection_m");
    pair.validate();
    return pair;
}

mech::EesMechanism ees_from(const Json& ees) {
    mech::EesMechanism m = mech::make_ees(
        require_number(ees, "k_es_n_per_m"), require_number(ees, "stroke_mm") * 1e-3,
        require_number(ees, "orbital_radius_m"), require_number(ees, "theta_r_final_rad"));
    m.force_override = number_or(ees, "force_override_n", 0.0);
    m.validate();
    return m;
}

mech::ResetSpringDesign reset_from(const Json& reset) {
    mech::ResetSpringDesign d;
    d.foot_mass = require_number(reset, "foot_mass_kg");
    d.l2 = require_number(reset, "l2_m");
    d.beta = require_number(reset, "beta_rad");
    d.point_d = {require_number(reset, "d_x_m"), require_number(reset, "d_y_m")};
    d.point_a = {require_number(reset, "a_x_m"), require_number(reset, "a_y_m")};
    d.point_f = {require_number(reset, "f_x_m"), require_number(reset, "f_y_m")};
    d.theta_pf = number_or(reset, "theta_pf_rad", -0.35);
    d.validate();
    return d;
}

sysid::ChirpSpec chirp_from(const Json& chirp) {
    sysid::ChirpSpec s;
    s.amplitude = require_number(chirp, "amplitude_v");
    s.offset = number_or(chirp, "offset_v", 0.0);
    s.omega1 = require_number(chirp, "omega1_hz");
    s.omega2 = require_number(chirp, "omega2_hz");
    s.duration = require_number(chirp, "duration_s");
    s.dt = require_number(chirp, "dt_s");
    s.validate();
    return s;
}

sysid::SecondOrderTf tf_from(const Json& tf) {
    sysid::SecondOrderTf t{require_number(tf, "b0"), require_number(tf, "a1"),
                           require_number(tf, "a0")};
    t.validate();
    return t;
}

control::PidGains gains_from(const Json& gains) {
    control::PidGains g;
    g.kp = number_or(gains, "kp", 0.0);
    g.ki = number_or(gains, "ki", 0.0);
    g.kd = number_or(gains, "kd", 0.0);
    g.dt = number_or(gains, "dt_s", 1e-3);
    g.validate();
    return g;
}

control::DobConfig dob_from(const Json& dob) {
    control::DobConfig d;
    d.g = require_number(dob, "g_rad_s");
    d.j_nominal = require_number(dob, "j_nominal_kg_m2");
    d.k_t = require_number(dob, "k_t_nm_per_a");
    d.inner_p = number_or(dob, "inner_p", 0.0);
    d.validate();
    return d;
}

design::BatterySpec battery_spec_from(const Json& pack) {
    design::BatterySpec spec;
    spec.cell_voltage_nominal = require_number(pack, "cell_voltage_nominal_v");
    spec.cell_capacity_ah = require_number(pack, "cell_capacity_ah");
    spec.cells_in_series = static_cast<int>(require_number(pack, "cells_in_series"));
    spec.cell_mass = require_number(pack, "cell_mass_kg");
    spec.validate();
    return spec;
}

gait::GaitProfile load_profile(const ScenarioConfig& cfg) {
    const std::string csv = cfg.resolve_path(require_string(cfg.root, "profile_csv"));
    const auto rows = csvio::load_gait_csv(csv);
    return csvio::profile_from_rows(rows, require_number(cfg.root, "body_mass_kg"),
                                    require_number(cfg.root, "cadence_period_s"),
                                    cfg.root.contains("speed_label")
                                        ? cfg.root["speed_label"].get<std::string>()
                                        : "normal");
}

} // namespace anklekit::config
