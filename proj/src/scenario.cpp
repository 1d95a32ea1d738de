#include "anklekit/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>

#include "anklekit/csvio.hpp"
#include "anklekit/svgplot.hpp"
#include "anklekit/version.hpp"

namespace fs = std::filesystem;

namespace anklekit::scenario {

using config::Json;
using config::ScenarioConfig;

std::string resolve_data_dir(const std::string& explicit_dir) {
    if (!explicit_dir.empty()) return explicit_dir;
    if (const char* env = std::getenv("ANKLE_KIT_DATA")) {
        if (*env) return env;
    }
    return "data";
}

namespace {

void write_json(const std::string& path, const Json& j) {
    csvio::write_file(path, j.dump(2) + "\n");
}

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

svgplot::Series series(const std::vector<double>& x, const std::vector<double>& y,
                       const char* color, const char* label) {
    return {x, y, color, label};
}

std::vector<double> step_disturbance(const Json& j, std::size_t n, double dt) {
    std::vector<double> d;
    if (!j.is_object()) return d;
    const double value = config::number_or(j, "step_value", 0.0);
    if (value == 0.0) return d;
    const double at = config::number_or(j, "step_time_s", 0.0);
    d.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (i * dt >= at) d[i] = value;
    }
    return d;
}

// power for one torque source on a trace grid
std::vector<double> power_profile_of(const gait::SimulationTrace& t,
                                     const std::vector<double>& torque) {
    std::vector<double> p(torque.size());
    for (std::size_t i = 0; i < torque.size(); ++i) p[i] = torque[i] * t.omega[i];
    return p;
}

// --- simulate -----------------------------------------------------------------

struct SimulateArtifacts {
    gait::SimulationTrace trace;
    gait::ComparisonMetrics power_metrics;
    gait::ComparisonMetrics torque_metrics;
    std::vector<double> natural_torque;
    std::vector<double> natural_power;
};

SimulateArtifacts run_simulate_pipeline(const ScenarioConfig& cfg, double grid_step) {
    const gait::GaitProfile profile = config::load_profile(cfg);
    const Json& df = cfg.root["df"];
    const double theta_max = config::require_number(df, "theta_max_df_deg") * M_PI / 180.0;
    const double theta_toe = config::require_number(df, "theta_toe_off_deg") * M_PI / 180.0;
    const mech::DfGeometry geom =
        mech::design_slider_arc(config::df_geometry_from(df), theta_max, theta_toe);
    const mech::ParallelSpringPair pair = config::spring_pair_from(df);
    const mech::EesMechanism ees = config::ees_from(cfg.root["ees"]);
    std::optional<mech::ResetSpringDesign> reset;
    if (cfg.root.contains("reset") && cfg.root["reset"].is_object())
        reset = config::reset_from(cfg.root["reset"]);

    gait::GaitSchedule schedule;
    if (cfg.root.contains("schedule") && cfg.root["schedule"].is_object()) {
        const Json& s = cfg.root["schedule"];
        if (s.contains("pushoff_onset_percent"))
            schedule.pushoff_onset_percent = s["pushoff_onset_percent"].get<double>();
        if (s.contains("pushoff_end_percent"))
            schedule.pushoff_end_percent = s["pushoff_end_percent"].get<double>();
    }

    SimulateArtifacts out;
    out.trace = gait::simulate_gait_cycle(geom, pair, ees, reset, profile, schedule, grid_step);
    out.natural_power = gait::resample(profile.power_spline(), out.trace.grid);
    out.natural_torque = gait::resample(profile.torque_spline(), out.trace.grid);
    const double dt = out.trace.seconds_per_step();
    out.power_metrics =
        gait::compare(out.natural_power, out.trace.power_total, out.trace.grid, dt);
    out.torque_metrics = gait::compare(out.natural_torque, out.trace.torque_total, out.trace.grid);
    return out;
}

Json simulate_metrics(const SimulateArtifacts& a) {
    Json m;
    m["peak_torque_total_nm"] = a.torque_metrics.peak_candidate.value;
    m["peak_torque_percent"] = a.torque_metrics.peak_candidate.percent;
    m["peak_torque_natural_nm"] = a.torque_metrics.peak_reference.value;
    m["torque_nrmse_percent"] = a.torque_metrics.nrmse_percent;
    m["power_pearson_r"] = a.power_metrics.pearson_r;
    m["power_nrmse_percent"] = a.power_metrics.nrmse_percent;
    m["peak_power_w"] = a.power_metrics.peak_candidate.value;
    m["peak_power_percent"] = a.power_metrics.peak_candidate.percent;
    m["peak_power_natural_w"] = a.power_metrics.peak_reference.value;
    m["peak_power_natural_percent"] = a.power_metrics.peak_reference.percent;
    m["energy_df_j"] = a.trace.energy_df;
    m["energy_ees_j"] = a.trace.energy_ees;
    m["energy_reset_j"] = a.trace.energy_reset;
    m["energy_total_j"] = a.trace.energy_total;
    m["energy_natural_j"] = a.power_metrics.energy_reference;
    m["pushoff_onset_percent"] = a.trace.pushoff_onset;
    m["pushoff_end_percent"] = a.trace.pushoff_end;
    return m;
}

void write_simulate_artifacts(const SimulateArtifacts& a, const std::string& out_dir,
                              std::vector<std::string>& artifacts) {
    const auto& t = a.trace;
    const std::string trace_csv = join(out_dir, "trace.csv");
    csvio::save_table_csv(
        trace_csv,
        "percent,angle_rad,omega_rad_s,torque_df_nm,torque_ees_nm,torque_reset_nm,"
        "torque_total_nm,power_w",
        {t.grid, t.angle, t.omega, t.torque_df, t.torque_ees, t.torque_reset, t.torque_total,
         t.power_total});
    artifacts.push_back(trace_csv);

    const std::string torque_svg = join(out_dir, "torque_comparison.svg");
    svgplot::write_line_plot(torque_svg,
                             {"Ankle torque over the gait cycle", "gait cycle [%]",
                              "torque [N m]"},
                             {series(t.grid, a.natural_torque, "#2e8b57", "natural"),
                              series(t.grid, t.torque_df, "#1f77b4", "DF mechanism"),
                              series(t.grid, t.torque_ees, "#d62728", "EES mechanism"),
                              series(t.grid, t.torque_total, "#000000", "total")});
    artifacts.push_back(torque_svg);

    const std::string power_svg = join(out_dir, "power_comparison.svg");
    svgplot::write_line_plot(power_svg,
                             {"Ankle power over the gait cycle", "gait cycle [%]", "power [W]"},
                             {series(t.grid, a.natural_power, "#2e8b57", "natural"),
                              series(t.grid, t.power_total, "#000000", "total"),
                              series(t.grid, power_profile_of(t, t.torque_df), "#1f77b4", "DF"),
                              series(t.grid, power_profile_of(t, t.torque_ees), "#d62728",
                                     "EES")});
    artifacts.push_back(power_svg);
}

// --- design --------------------------------------------------------------------

Json run_design_pipeline(const ScenarioConfig& cfg, const std::string& out_dir,
                         std::uint64_t seed, std::vector<std::string>& artifacts) {
    const gait::GaitProfile profile = config::load_profile(cfg);
    const Json& df = cfg.root["df"];
    const double theta_max = config::require_number(df, "theta_max_df_deg") * M_PI / 180.0;
    const double theta_toe = config::require_number(df, "theta_toe_off_deg") * M_PI / 180.0;

    mech::DfGeometry geom;
    mech::ParallelSpringPair pair;
    double calib_residual = -1.0;
    if (cfg.root.contains("calibrate") && cfg.root["calibrate"].is_boolean() &&
        cfg.root["calibrate"].get<bool>()) {
        if (!cfg.root.contains("calibrate_bounds") || !cfg.root["calibrate_bounds"].is_object())
            throw ConfigError("design: calibrate mode needs object 'calibrate_bounds'");
        design::GeometryBounds bounds;
        const Json& b = cfg.root["calibrate_bounds"];
        auto interval = [&](const char* key) -> std::array<double, 2> {
            if (!b.contains(key) || !b[key].is_array() || b[key].size() != 2)
                throw ConfigError(std::string("calibrate_bounds: missing interval '") + key +
                                  "'");
            return {b[key][0].get<double>(), b[key][1].get<double>()};
        };
        bounds.m_len = interval("m_len_m");
        bounds.l_m = interval("l_m_m");
        bounds.theta_in = interval("theta_in_rad");
        bounds.arc_radius = interval("arc_radius_m");
        bounds.spring_travel = interval("spring_travel_m");
        bounds.theta_max_df = theta_max;
        bounds.theta_toe_off = theta_toe;
        design::CalibrationOptions opts;
        opts.seed = seed;
        opts.restarts = static_cast<int>(config::number_or(cfg.root, "calibrate_restarts", 8));
        opts.max_sweeps = static_cast<int>(config::number_or(cfg.root, "calibrate_sweeps", 6));
        const auto result = design::calibrate_geometry(profile, bounds, opts);
        geom = result.geometry;
        pair = result.pair;
        calib_residual = result.nrmse_percent;
    } else {
        geom = mech::design_slider_arc(config::df_geometry_from(df), theta_max, theta_toe);
    }

    const design::ForceDeflectionCurve curve = design::derive_force_deflection(profile, geom);
    const design::SpringFitResult fit = design::fit_parallel_springs(curve);
    if (calib_residual < 0.0) pair = fit.pair;

    // DF-only trace for the energy budget.
    const gait::SimulationTrace df_trace =
        gait::simulate_gait_cycle(geom, pair, mech::make_ees(0.0, 0.02, 0.1, 1.0), std::nullopt,
                                  profile, gait::GaitSchedule{}, 0.5);
    const double stroke = config::require_number(cfg.root, "ees_stroke_mm") * 1e-3;
    const design::EnergyBudget budget = design::ees_energy_budget(profile, df_trace, stroke);

    const double energy_per_step = config::require_number(cfg.root, "energy_per_step_j");
    const double steps = config::require_number(cfg.root, "steps_per_charge");
    const double voltage = config::require_number(cfg.root, "motor_voltage_v");
    const double required_ah = design::battery_capacity(energy_per_step, steps, voltage);
    design::BatterySpec pack{3.7, 4.2, 8, 0.048};
    if (cfg.root.contains("battery") && cfg.root["battery"].is_object())
        pack = config::battery_spec_from(cfg.root["battery"]);

    // Force-deflection artifact: data and fitted model.
    std::vector<double> xs, fs, fitted;
    for (const auto& [x, f] : curve.points) {
        xs.push_back(x);
        fs.push_back(f);
        fitted.push_back(mech::spring_force(fit.pair, x));
    }
    const std::string fd_csv = join(out_dir, "force_deflection.csv");
    csvio::save_table_csv(fd_csv, "deflection_m,force_n,fitted_force_n", {xs, fs, fitted});
    artifacts.push_back(fd_csv);
    const std::string fd_svg = join(out_dir, "force_deflection.svg");
    svgplot::write_line_plot(fd_svg,
                             {"DF spring force vs deflection", "deflection [m]", "force [N]"},
                             {series(xs, fs, "#2e8b57", "required"),
                              series(xs, fitted, "#000000", "fitted pair")});
    artifacts.push_back(fd_svg);

    // Fitted parameters in the scenario config dialect, ready to simulate.
    Json params;
    params["df"] = {{"m_len_m", geom.m_len},
                    {"l_m_m", geom.l_m},
                    {"theta_in_rad", geom.theta_in},
                    {"arc_radius_m", geom.arc_radius},
                    {"free_length_m", geom.free_length},
                    {"theta_max_df_deg", theta_max * 180.0 / M_PI},
                    {"theta_toe_off_deg", theta_toe * 180.0 / M_PI},
                    {"k1_n_per_m", pair.k1},
                    {"k2_n_per_m", pair.k2},
                    {"engagement_offset_m", pair.engagement_offset},
                    {"max_deflection_m", pair.max_deflection}};
    params["ees"] = {{"k_es_n_per_m", budget.ees_required_k},
                     {"stroke_mm", stroke * 1e3},
                     {"orbital_radius_m", config::number_or(cfg.root, "ees_orbital_radius_m", 0.155)},
                     {"theta_r_final_rad", config::number_or(cfg.root, "ees_theta_r_final_rad", 1.35)}};
    const std::string params_path = join(out_dir, "fitted_params.json");
    write_json(params_path, params);
    artifacts.push_back(params_path);

    Json m;
    m["k1_n_per_m"] = pair.k1;
    m["k2_n_per_m"] = pair.k2;
    m["engagement_offset_m"] = pair.engagement_offset;
    m["spring_fit_nrmse_percent"] = fit.nrmse_percent;
    m["calibration_nrmse_percent"] = calib_residual;
    m["natural_pushoff_energy_j"] = budget.natural_pushoff_energy;
    m["df_released_energy_j"] = budget.df_released_energy;
    m["energy_deficit_j"] = budget.deficit;
    m["ees_required_k_n_per_m"] = budget.ees_required_k;
    m["battery_required_ah"] = required_ah;
    m["battery_pack_voltage_v"] = pack.pack_voltage();
    m["battery_sufficient"] = pack.sufficient_for(required_ah);
    return m;
}

// --- sysid ----------------------------------------------------------------------

Json run_sysid_pipeline(const ScenarioConfig& cfg, const std::string& out_dir,
                        std::uint64_t seed, std::vector<std::string>& artifacts) {
    const std::string mode = config::require_string(cfg.root, "mode");
    std::vector<double> u, y, t;
    double dt = 0.0;
    Json m;
    if (mode == "synthesize") {
        const sysid::ChirpSpec chirp = config::chirp_from(cfg.root["chirp"]);
        dt = chirp.dt;
        u = sysid::chirp_generate(chirp);
        const sysid::SecondOrderTf truth = config::tf_from(cfg.root["true_tf"]);
        y = sysid::tf_simulate(truth, u, dt);
        const double sigma = config::number_or(cfg.root, "noise_sigma_v", 0.0);
        if (sigma > 0.0) {
            const auto noise = sysid::gaussian_noise(
                y.size(), sigma,
                static_cast<std::uint64_t>(config::number_or(cfg.root, "noise_seed",
                                                             static_cast<double>(seed))));
            for (std::size_t i = 0; i < y.size(); ++i) y[i] += noise[i];
        }
        m["true_b0"] = truth.b0;
        m["true_a1"] = truth.a1;
        m["true_a0"] = truth.a0;
    } else if (mode == "csv") {
        const auto in = csvio::load_signal_csv(
            cfg.resolve_path(config::require_string(cfg.root, "input_csv")));
        const auto outp = csvio::load_signal_csv(
            cfg.resolve_path(config::require_string(cfg.root, "output_csv")));
        if (in.t.size() < 2 || in.t.size() != outp.t.size())
            throw ConfigError("sysid: input/output signals must share their time base");
        u = in.value;
        y = outp.value;
        dt = in.t[1] - in.t[0];
    } else if (mode == "io_csv") {
        const auto cols = csvio::load_table_csv(
            cfg.resolve_path(config::require_string(cfg.root, "io_csv")), "t_s,u,y");
        if (cols[0].size() < 2) throw ConfigError("sysid: io table too short");
        u = cols[1];
        y = cols[2];
        dt = cols[0][1] - cols[0][0];
    } else {
        throw ConfigError("sysid: unknown mode '" + mode + "'");
    }
    t.resize(u.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = i * dt;

    const sysid::FitReport fit = sysid::fit_second_order(u, y, dt);
    const auto y_hat = sysid::tf_simulate(fit.tf, u, dt);

    const std::string io_csv = join(out_dir, "chirp_io.csv");
    csvio::save_table_csv(io_csv, "t_s,u,y", {t, u, y});
    artifacts.push_back(io_csv);

    // Downsampled overlay plot.
    const std::size_t stride = std::max<std::size_t>(1, t.size() / 1500);
    std::vector<double> td, yd, yhd;
    for (std::size_t i = 0; i < t.size(); i += stride) {
        td.push_back(t[i]);
        yd.push_back(y[i]);
        yhd.push_back(y_hat[i]);
    }
    const std::string fit_svg = join(out_dir, "fit_overlay.svg");
    svgplot::write_line_plot(fit_svg, {"Identified model vs output", "t [s]", "signal [V]"},
                             {series(td, yd, "#2e8b57", "measured"),
                              series(td, yhd, "#000000", "model")});
    artifacts.push_back(fit_svg);

    m["b0"] = fit.tf.b0;
    m["a1"] = fit.tf.a1;
    m["a0"] = fit.tf.a0;
    m["fit_percent"] = fit.fit_percent;
    m["residual_rms"] = fit.residual_rms;
    if (m.contains("true_b0")) {
        m["b0_error_percent"] = 100.0 * std::abs(fit.tf.b0 - m["true_b0"].get<double>()) /
                                std::abs(m["true_b0"].get<double>());
        m["a1_error_percent"] = 100.0 * std::abs(fit.tf.a1 - m["true_a1"].get<double>()) /
                                std::abs(m["true_a1"].get<double>());
        m["a0_error_percent"] = 100.0 * std::abs(fit.tf.a0 - m["true_a0"].get<double>()) /
                                std::abs(m["true_a0"].get<double>());
    }
    return m;
}

// --- control ---------------------------------------------------------------------

Json run_control_pipeline(const ScenarioConfig& cfg, const std::string& out_dir,
                          std::vector<std::string>& artifacts) {
    const std::string mode = config::require_string(cfg.root, "mode");
    const sysid::SecondOrderTf plant = config::tf_from(cfg.root["plant"]);
    control::PidGains gains = config::gains_from(cfg.root["gains"]);

    std::vector<double> reference;
    std::optional<control::DobConfig> dob;
    if (mode == "velocity") {
        std::vector<control::CubicVelocityRef> segments;
        double v_prev = 0.0;
        for (const auto& r : cfg.root["references_mm_s"]) {
            const double v0 = config::number_or(r, "v0", v_prev);
            const double vf = config::require_number(r, "vf");
            segments.push_back(control::cubic_velocity_reference(
                v0, vf, config::number_or(r, "acc0", 0.0), config::number_or(r, "accf", 0.0),
                config::require_number(r, "duration_s")));
            v_prev = vf;
        }
        reference = control::render_references(segments, gains.dt);
        if (cfg.root.contains("dob") && cfg.root["dob"].is_object()) {
            dob = config::dob_from(cfg.root["dob"]);
            if (gains.kp == 0.0) gains.kp = dob->inner_p;
        }
    } else if (mode == "current_ramp") {
        const Json& r = cfg.root["ramp"];
        reference = control::ramp_reference(
            config::require_number(r, "start_s"), config::require_number(r, "rise_s"),
            config::require_number(r, "peak_a"), config::require_number(r, "fall_s"),
            config::require_number(r, "total_s"), gains.dt);
    } else {
        throw ConfigError("control: unknown mode '" + mode + "'");
    }

    const auto disturbance =
        step_disturbance(cfg.root.contains("disturbance") ? cfg.root["disturbance"] : Json(),
                         reference.size(), gains.dt);
    const control::ClosedLoopTrace trace =
        control::simulate_velocity_loop(plant, gains, dob, reference, disturbance);

    const std::string trace_csv = join(out_dir, "trace.csv");
    csvio::save_table_csv(trace_csv, "t_s,ref,meas,u,dhat",
                          {trace.t, trace.reference, trace.measured, trace.control_effort,
                           trace.disturbance_estimate});
    artifacts.push_back(trace_csv);

    const std::size_t stride = std::max<std::size_t>(1, trace.t.size() / 1500);
    std::vector<double> td, rd, md;
    for (std::size_t i = 0; i < trace.t.size(); i += stride) {
        td.push_back(trace.t[i]);
        rd.push_back(trace.reference[i]);
        md.push_back(trace.measured[i]);
    }
    const std::string svg = join(out_dir, "tracking.svg");
    svgplot::write_line_plot(
        svg,
        {mode == "velocity" ? "Velocity tracking" : "Current tracking", "t [s]",
         mode == "velocity" ? "velocity [mm/s]" : "current [A]"},
        {series(td, rd, "#2e8b57", "reference"), series(td, md, "#1f77b4", "measured")});
    artifacts.push_back(svg);

    const auto metrics = gait::compare(trace.reference, trace.measured, trace.t);
    Json m;
    m["pearson_r"] = metrics.pearson_r;
    m["tracking_rmse"] = metrics.rmse;
    m["dob_enabled"] = dob.has_value();
    return m;
}

Json run_battery_pipeline(const ScenarioConfig& cfg) {
    const double required = design::battery_capacity(
        config::require_number(cfg.root, "energy_per_step_j"),
        config::require_number(cfg.root, "steps"),
        config::require_number(cfg.root, "nominal_voltage_v"));
    design::BatterySpec pack{3.7, 4.2, 8, 0.048};
    if (cfg.root.contains("pack") && cfg.root["pack"].is_object())
        pack = config::battery_spec_from(cfg.root["pack"]);
    Json m;
    m["required_ah"] = required;
    m["cell_capacity_ah"] = pack.cell_capacity_ah;
    m["pack_voltage_v"] = pack.pack_voltage();
    m["pack_mass_kg"] = pack.pack_mass();
    m["sufficient"] = pack.sufficient_for(required);
    return m;
}

} // namespace

RunReport run_scenario(const std::string& kind, const std::string& config_path,
                       const RunOptions& options) {
    const std::string data_dir = resolve_data_dir(options.data_dir);
    ScenarioConfig cfg = config::load_config(config_path, data_dir);

    const auto diagnostics = config::validate_config(cfg);
    if (!diagnostics.empty()) {
        std::string msg = config_path + ": invalid config";
        for (const auto& d : diagnostics) msg += "\n  - " + d;
        throw ConfigError(msg);
    }
    if (!kind.empty() && kind != cfg.kind())
        throw ConfigError("config kind '" + cfg.kind() + "' does not match requested '" + kind +
                          "'");

    const std::uint64_t seed =
        options.seed != 0 ? options.seed
                          : static_cast<std::uint64_t>(config::number_or(cfg.root, "seed", 0.0));
    const double grid_step = options.grid_step_percent > 0.0
                                 ? options.grid_step_percent
                                 : config::number_or(cfg.root, "grid_step_percent", 0.5);

    fs::create_directories(options.out_dir);

    RunReport report;
    report.scenario_id = cfg.id();
    report.kind = cfg.kind();
    report.toolkit_version = ANKLEKIT_VERSION;
    report.seed = seed;

    const std::string canonical = config::canonical_config_text(cfg, seed, grid_step);
    report.config_hash = config::fnv1a_hex(canonical);
    const std::string resolved_path = join(options.out_dir, "resolved_config.json");
    csvio::write_file(resolved_path, canonical);
    report.artifacts.push_back(resolved_path);

    if (report.kind == "simulate") {
        const SimulateArtifacts a = run_simulate_pipeline(cfg, grid_step);
        report.metrics = simulate_metrics(a);
        write_simulate_artifacts(a, options.out_dir, report.artifacts);
    } else if (report.kind == "design") {
        report.metrics = run_design_pipeline(cfg, options.out_dir, seed, report.artifacts);
    } else if (report.kind == "sysid") {
        report.metrics = run_sysid_pipeline(cfg, options.out_dir, seed, report.artifacts);
    } else if (report.kind == "control") {
        report.metrics = run_control_pipeline(cfg, options.out_dir, report.artifacts);
    } else if (report.kind == "battery") {
        report.metrics = run_battery_pipeline(cfg);
    }

    Json rj;
    rj["scenario_id"] = report.scenario_id;
    rj["kind"] = report.kind;
    rj["toolkit_version"] = report.toolkit_version;
    rj["config_hash"] = report.config_hash;
    rj["seed"] = report.seed;
    rj["metrics"] = report.metrics;
    rj["artifacts"] = report.artifacts;
    const std::string report_path = join(options.out_dir, "report.json");
    write_json(report_path, rj);
    report.artifacts.push_back(report_path);
    return report;
}

RunReport validate_scenario(const std::string& config_path, const RunOptions& options) {
    RunReport report;
    report.kind = "validate";
    report.scenario_id = "validate";
    report.toolkit_version = ANKLEKIT_VERSION;

    if (config_path.size() > 4 && config_path.substr(config_path.size() - 4) == ".csv") {
        // direct gait CSV validation
        std::vector<std::string> diags;
        try {
            csvio::parse_gait_csv(csvio::read_file(config_path), diags);
        } catch (const ConfigError& e) {
            diags.push_back(e.what());
        }
        report.diagnostics = diags;
        return report;
    }

    std::string text;
    try {
        text = csvio::read_file(config_path);
    } catch (const ConfigError& e) {
        report.diagnostics.push_back(e.what());
        return report;
    }
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        report.diagnostics.push_back(
            "missing kind (one of simulate, design, sysid, control, battery): empty config");
        return report;
    }
    ScenarioConfig cfg;
    try {
        cfg = config::load_config(config_path, resolve_data_dir(options.data_dir));
    } catch (const ConfigError& e) {
        report.diagnostics.push_back(e.what());
        return report;
    }
    report.diagnostics = config::validate_config(cfg);
    report.scenario_id = cfg.id();
    return report;
}

RunReport run_report_suite(const RunOptions& options) {
    const std::string data_dir = resolve_data_dir(options.data_dir);
    const std::vector<std::string> names = {"fast_walk",      "normal_walk",    "design_df",
                                            "sysid_ballscrew", "sysid_replacer", "control_ramp",
                                            "control_velocity", "battery"};
    RunReport summary;
    summary.kind = "report";
    summary.scenario_id = "report_suite";
    summary.toolkit_version = ANKLEKIT_VERSION;
    summary.seed = options.seed;
    Json runs = Json::object();
    for (const auto& name : names) {
        const std::string cfg_path = join(join(data_dir, "scenarios"), name + ".json");
        RunOptions sub = options;
        sub.out_dir = join(options.out_dir, name);
        const RunReport r = run_scenario("", cfg_path, sub);
        runs[name] = {{"config_hash", r.config_hash}, {"metrics", r.metrics}};
        for (const auto& a : r.artifacts) summary.artifacts.push_back(a);
    }
    summary.metrics = runs;
    fs::create_directories(options.out_dir);
    const std::string index_path = join(options.out_dir, "report.json");
    Json rj;
    rj["scenario_id"] = summary.scenario_id;
    rj["toolkit_version"] = summary.toolkit_version;
    rj["runs"] = runs;
    write_json(index_path, rj);
    summary.artifacts.push_back(index_path);
    return summary;
}

} // namespace anklekit::scenario
