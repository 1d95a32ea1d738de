// Acceptance suite: runs every release criterion at its pinned tolerance and
// prints one pass/fail line each. Exit code 0 only if all criteria hold.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "anklekit/config.hpp"
#include "anklekit/control.hpp"
#include "anklekit/csvio.hpp"
#include "anklekit/design.hpp"
#include "anklekit/gait.hpp"
#include "anklekit/mech.hpp"
#include "anklekit/scenario.hpp"
#include "anklekit/sysid.hpp"

using namespace anklekit;
namespace fs = std::filesystem;

namespace {

const std::string kDataDir = ANKLEKIT_DATA_DIR;
int g_failures = 0;

void report(int idx, bool ok, const std::string& what) {
    std::printf("[%s] %2d. %s\n", ok ? "PASS" : "FAIL", idx, what.c_str());
    if (!ok) ++g_failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

std::string temp_out(const std::string& tag) {
    const fs::path p = fs::temp_directory_path() / ("anklekit_acceptance_" + tag);
    fs::remove_all(p);
    return p.string();
}

mech::DfGeometry shipped_geometry() {
    const auto cfg = config::load_config(kDataDir + "/scenarios/fast_walk.json", kDataDir);
    const auto& df = cfg.root["df"];
    return mech::design_slider_arc(config::df_geometry_from(df),
                                   config::require_number(df, "theta_max_df_deg") * M_PI / 180.0,
                                   config::require_number(df, "theta_toe_off_deg") * M_PI / 180.0);
}

// --- criteria ----------------------------------------------------------------

scenario::RunReport fast_walk_run(const std::string& tag, std::uint64_t seed) {
    scenario::RunOptions opt;
    opt.data_dir = kDataDir;
    opt.out_dir = temp_out(tag);
    opt.seed = seed;
    return scenario::run_scenario("simulate", kDataDir + "/scenarios/fast_walk.json", opt);
}

void criterion_1_and_2() {
    const auto run = fast_walk_run("fast", 1);
    const double peak = run.metrics["peak_torque_total_nm"].get<double>();
    report(1, peak >= 130.0 && peak <= 154.0,
           fmt("fast-walk peak total torque %.2f N*m within [130, 154]", peak));
    const double r = run.metrics["power_pearson_r"].get<double>();
    const double nrmse = run.metrics["power_nrmse_percent"].get<double>();
    report(2, r >= 0.95 && nrmse <= 15.0,
           fmt("power match: pearson r %.4f >= 0.95 and NRMSE %.2f%% <= 15%%", r, nrmse));
}

void criterion_3() {
    const auto g = shipped_geometry();
    const double theta_max = 9.0 * M_PI / 180.0;
    double max_dev = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double tr =
            g.arc_theta_range[0] + (g.arc_theta_range[1] - g.arc_theta_range[0]) * i / 2000.0;
        max_dev = std::max(max_dev, std::abs(mech::df_attachment_position(g, theta_max, tr).norm() -
                                             g.arc_radius));
    }
    const double toe = mech::df_deflection(g, -20.0 * M_PI / 180.0, g.arc_theta_range[1]);
    report(3, max_dev < 1e-9 * g.free_length && toe < 1e-9,
           fmt("arc isometry dev %.3g m < 1e-9*L and toe-off deflection %.3g m < 1e-9 m", max_dev,
               toe));
}

void criterion_4() {
    const auto g = shipped_geometry();
    const auto cfg = config::load_config(kDataDir + "/scenarios/fast_walk.json", kDataDir);
    const auto pair = config::spring_pair_from(cfg.root["df"]);
    const double theta_max = 9.0 * M_PI / 180.0, theta_toe = -20.0 * M_PI / 180.0;
    const double theta_r_end = g.arc_theta_range[1];

    const double dmax = mech::df_deflection(g, theta_max, theta_r_end);
    // stored energy from an independent 1000-step trapezoid of the force law
    double stored = 0.0, prev_f = 0.0;
    for (int i = 1; i <= 1000; ++i) {
        const double x = dmax * i / 1000.0;
        const double f = mech::spring_force(pair, x);
        stored += 0.5 * (prev_f + f) * dmax / 1000.0;
        prev_f = f;
    }
    double work = 0.0;
    double prev = mech::df_torque(g, pair, {theta_toe, 0.66, 0.0}, theta_r_end).torque;
    for (int i = 1; i <= 1000; ++i) {
        const double th = theta_toe + (theta_max - theta_toe) * i / 1000.0;
        const double tau = mech::df_torque(g, pair, {th, 0.5, 0.0}, theta_r_end).torque;
        work += 0.5 * (prev + tau) * (theta_max - theta_toe) / 1000.0;
        prev = tau;
    }
    const double rel = std::abs(work - stored) / stored;
    report(4, rel <= 0.01,
           fmt("DF stored %.3f J vs release work %.3f J, difference %.3g%%", stored, work,
               100.0 * rel));
}

bool roundtrip(const sysid::SecondOrderTf& truth, double noise_fraction, double tol,
               double* fit_pct) {
    sysid::ChirpSpec spec{2.045, 2.495, 0.0, 30.0, 30.0, 1e-3};
    const auto u = sysid::chirp_generate(spec);
    auto y = sysid::tf_simulate(truth, u, spec.dt);
    if (noise_fraction > 0.0) {
        double peak = 0.0;
        for (double v : y) peak = std::max(peak, std::abs(v));
        const auto noise = sysid::gaussian_noise(y.size(), noise_fraction * peak, 20260809);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += noise[i];
    }
    const auto fit = sysid::fit_second_order(u, y, spec.dt);
    if (fit_pct) *fit_pct = fit.fit_percent;
    return std::abs(fit.tf.b0 - truth.b0) <= tol * truth.b0 &&
           std::abs(fit.tf.a1 - truth.a1) <= tol * truth.a1 &&
           std::abs(fit.tf.a0 - truth.a0) <= tol * truth.a0;
}

void criterion_5() {
    const sysid::SecondOrderTf ballscrew{0.1829, 0.5079, 0.1751};
    const sysid::SecondOrderTf replacer{0.3963, 0.9563, 0.4228};
    double fit_bs = 0.0, fit_rp = 0.0;
    const bool clean = roundtrip(ballscrew, 0.0, 0.02, &fit_bs) &&
                       roundtrip(replacer, 0.0, 0.02, &fit_rp) && fit_bs >= 99.0 &&
                       fit_rp >= 99.0;
    const bool noisy = roundtrip(ballscrew, 0.01, 0.05, nullptr) &&
                       roundtrip(replacer, 0.01, 0.05, nullptr);
    report(5, clean && noisy,
           fmt("SI round trip: clean fits %.2f%% / %.2f%% with coefficients within 2%%; noisy "
               "within 5%%",
               fit_bs, fit_rp));
}

void criterion_6() {
    sysid::ChirpSpec spec{1.35, 0.0, 0.0, 30.0, 30.0, 1e-3};
    const bool endpoints = sysid::instantaneous_frequency(spec, 0.0) == 0.0 &&
                           sysid::instantaneous_frequency(spec, 30.0) == 30.0;
    auto phase = [&](double t) {
        return spec.omega1 * t + (spec.omega2 - spec.omega1) * t * t / (2.0 * spec.duration);
    };
    double worst = 0.0;
    for (double t : {0.5, 3.0, 11.0, 19.5, 27.0, 29.5}) {
        const double h = 1e-4;
        const double fd = (phase(t + h) - phase(t - h)) / (2.0 * h);
        worst = std::max(worst,
                         std::abs(fd - sysid::instantaneous_frequency(spec, t)) /
                             sysid::instantaneous_frequency(spec, t));
    }
    report(6, endpoints && worst <= 1e-6,
           fmt("chirp endpoints exact; phase-derivative mismatch %.2g <= 1e-6", worst));
}

void criterion_7() {
    scenario::RunOptions opt;
    opt.data_dir = kDataDir;
    opt.out_dir = temp_out("ramp");
    const auto run =
        scenario::run_scenario("control", kDataDir + "/scenarios/control_ramp.json", opt);
    const double rmse = run.metrics["tracking_rmse"].get<double>();
    report(7, rmse <= 0.010, fmt("PID ramp tracking RMSE %.2f mA <= 10 mA", rmse * 1e3));
}

void criterion_8() {
    scenario::RunOptions opt;
    opt.data_dir = kDataDir;
    opt.out_dir = temp_out("vel");
    const auto run =
        scenario::run_scenario("control", kDataDir + "/scenarios/control_velocity.json", opt);
    const double r = run.metrics["pearson_r"].get<double>();

    // paired runs under a step input disturbance
    const sysid::SecondOrderTf plant{0.1829, 0.5079, 0.1751};
    control::PidGains gains{500.0, 0.0, 120.0, 1e-3};
    const control::DobConfig dob{40.0, 0.15, 0.0276, 500.0};
    std::vector<double> hold(12001, 10.0), dist(12001, 0.0);
    for (std::size_t i = 4000; i < dist.size(); ++i) dist[i] = 0.5;
    const auto off = control::simulate_velocity_loop(plant, gains, std::nullopt, hold, dist);
    const auto on = control::simulate_velocity_loop(plant, gains, dob, hold, dist);
    const double e_off = std::abs(hold.back() - off.measured.back());
    const double e_on = std::abs(hold.back() - on.measured.back());
    report(8, r >= 0.97 && e_on <= 0.1 * e_off,
           fmt("DOB velocity: r %.4f >= 0.97; steady-state error ratio %.4g <= 0.1", r,
               e_on / e_off));
}

void criterion_9() {
    const auto ref = control::cubic_velocity_reference(0.0, 14.5, 0.0, 0.0, 1.0);
    const bool coefficients = std::abs(ref.a + 29.0) <= 1e-12 && std::abs(ref.b - 43.5) <= 1e-12 &&
                              ref.c == 0.0 && ref.d == 0.0;
    const auto r2 = control::cubic_velocity_reference(2.0, -5.0, 0.7, -0.3, 1.3);
    const bool boundaries = std::abs(r2.eval(0.0) - 2.0) <= 1e-12 &&
                            std::abs(r2.eval(1.3) + 5.0) <= 1e-12 &&
                            std::abs(r2.accel(0.0) - 0.7) <= 1e-12 &&
                            std::abs(r2.accel(1.3) + 0.3) <= 1e-12;
    report(9, coefficients && boundaries,
           fmt("cubic reference: a=%.1f b=%.1f with exact boundary conditions", ref.a, ref.b));
}

void criterion_10() {
    const double ah = design::battery_capacity(10.0, 5000.0, 24.0);
    const design::BatterySpec pack{3.7, 4.2, 8, 0.048};
    report(10, std::abs(ah - 0.5787) <= 1e-4 && pack.sufficient_for(ah),
           fmt("battery sizing %.6f Ah within 0.5787 +/- 1e-4; 4.2 Ah cell sufficient", ah));
}

void criterion_11() {
    const mech::ParallelSpringPair truth{30000.0, 45000.0, 0.004, 0.015};
    design::ForceDeflectionCurve data;
    for (int i = 0; i <= 24; ++i) {
        const double x = 0.012 * i / 24.0;
        data.points.emplace_back(x, mech::spring_force(truth, x));
    }
    const auto fit = design::fit_parallel_springs(data);
    const bool ok = std::abs(fit.pair.k1 - truth.k1) <= 0.01 * truth.k1 &&
                    std::abs(fit.pair.k2 - truth.k2) <= 0.01 * truth.k2 &&
                    std::abs(fit.pair.engagement_offset - truth.engagement_offset) <=
                        0.01 * truth.engagement_offset;
    report(11, ok,
           fmt("spring fit round trip: k1 %.0f, k2 %.0f recovered within 1%%", fit.pair.k1,
               fit.pair.k2));
}

void criterion_12() {
    bool ok = true;
    std::string detail;

    // cross-product oracle on pseudo-random pairs
    std::uint64_t s = 99;
    for (int i = 0; i < 200 && ok; ++i) {
        auto rnd = [&s](double lo, double hi) {
            s = s * 6364136223846793005ULL + 1442695040888963407ULL;
            return lo + (hi - lo) * ((s >> 11) * 0x1.0p-53);
        };
        const PlanarVector arm{rnd(-1, 1), rnd(-1, 1)};
        const PlanarVector force{rnd(-2000, 2000), rnd(-2000, 2000)};
        const auto t = mech::TorqueResult::from(arm, force);
        if (t.torque != arm.x * force.y - arm.y * force.x) {
            ok = false;
            detail = "cross-product identity";
        }
    }

    // akima knot exactness and locality
    {
        std::vector<double> xs, ya, yb;
        for (int i = 0; i <= 10; ++i) {
            xs.push_back(i);
            ya.push_back(std::sin(0.9 * i));
            yb.push_back(ya.back());
        }
        yb[9] += 4.0;
        const AkimaSpline a(xs, ya), b(xs, yb);
        for (int i = 0; i <= 10 && ok; ++i) {
            if (std::abs(a.eval(xs[i]) - ya[i]) > 1e-12 * std::max(1.0, std::abs(ya[i]))) {
                ok = false;
                detail = "akima knot exactness";
            }
        }
        for (int i = 0; i <= 50 && ok; ++i) {
            const double x = 1.0 + i / 50.0;
            if (a.eval(x) != b.eval(x)) {
                ok = false;
                detail = "akima locality";
            }
        }
    }

    // pearson affine invariance
    {
        const std::vector<double> grid{0, 1, 2, 3, 4};
        const std::vector<double> a{0.0, 1.0, -1.0, 2.0, 0.5};
        std::vector<double> up = a, down = a;
        for (double& v : up) v = 3.0 * v + 1.0;
        for (double& v : down) v = -2.0 * v + 0.25;
        if (std::abs(gait::compare(a, up, grid).pearson_r - 1.0) > 1e-12 ||
            std::abs(gait::compare(a, down, grid).pearson_r + 1.0) > 1e-12) {
            ok = false;
            detail = "pearson affine invariance";
        }
    }

    // trace identities plus byte-identical reruns of the default scenario
    {
        const auto run_a = fast_walk_run("det_a", 5);
        const auto run_b = fast_walk_run("det_b", 5);
        if (run_a.config_hash != run_b.config_hash) {
            ok = false;
            detail = "config hash drift";
        }
        const std::string trace_a = csvio::read_file(run_a.artifacts[1]);
        const std::string trace_b = csvio::read_file(run_b.artifacts[1]);
        if (trace_a != trace_b) {
            ok = false;
            detail = "trace bytes differ between reruns";
        }

        const auto cfg = config::load_config(kDataDir + "/scenarios/fast_walk.json", kDataDir);
        const auto geom = shipped_geometry();
        const auto pair = config::spring_pair_from(cfg.root["df"]);
        const auto ees = config::ees_from(cfg.root["ees"]);
        const auto profile = config::load_profile(cfg);
        const auto trace = gait::simulate_gait_cycle(geom, pair, ees, std::nullopt, profile,
                                                     gait::GaitSchedule{}, 0.5);
        for (std::size_t i = 0; i < trace.grid.size() && ok; ++i) {
            if (trace.torque_total[i] -
                    (trace.torque_df[i] + trace.torque_ees[i] + trace.torque_reset[i]) !=
                0.0) {
                ok = false;
                detail = "trace decomposition";
            }
            if (trace.power_total[i] - trace.torque_total[i] * trace.omega[i] != 0.0) {
                ok = false;
                detail = "power identity";
            }
        }
    }

    report(12, ok,
           ok ? "property suites: cross oracle, akima, pearson, trace identities, determinism"
              : "property suite failed: " + detail);
}

} // namespace

int main() {
    std::printf("acceptance suite (data: %s)\n", kDataDir.c_str());
    try {
        criterion_1_and_2();
        criterion_3();
        criterion_4();
        criterion_5();
        criterion_6();
        criterion_7();
        criterion_8();
        criterion_9();
        criterion_10();
        criterion_11();
        criterion_12();
    } catch (const std::exception& e) {
        std::printf("[FAIL] suite aborted: %s\n", e.what());
        return 1;
    }
    std::printf("%s\n", g_failures == 0 ? "all criteria passed" : "criteria failed");
    return g_failures == 0 ? 0 : 1;
}
