#include "anklekit/gait.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace anklekit::gait {

void GaitProfile::validate() const {
    if (samples.size() < 20)
        throw ConfigError("gait profile: need at least 20 samples, got " +
                          std::to_string(samples.size()));
    if (samples.front().percent != 0.0 || samples.back().percent != 100.0)
        throw ConfigError("gait profile: percent axis must start at 0 and end at 100");
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (!(samples[i].percent > samples[i - 1].percent))
            throw ConfigError("gait profile: percent not strictly increasing at row " +
                              std::to_string(i + 1));
    }
    if (!(body_mass > 0.0)) throw ConfigError("gait profile: body mass must be positive");
    if (!(cadence_period > 0.0)) throw ConfigError("gait profile: cadence period must be positive");
}

std::vector<double> GaitProfile::percents() const {
    std::vector<double> xs;
    xs.reserve(samples.size());
    for (const auto& s : samples) xs.push_back(s.percent);
    return xs;
}

namespace {

AkimaSpline column_spline(const GaitProfile& p, double GaitSample::*member) {
    std::vector<double> xs, ys;
    xs.reserve(p.samples.size());
    ys.reserve(p.samples.size());
    for (const auto& s : p.samples) {
        xs.push_back(s.percent);
        ys.push_back(s.*member);
    }
    return AkimaSpline(std::move(xs), std::move(ys));
}

double arg_extremum(const AkimaSpline& spline, bool maximize) {
    double best_x = 0.0;
    double best_v = maximize ? -1e300 : 1e300;
    for (int i = 0; i <= 2000; ++i) {
        const double x = 100.0 * i / 2000.0;
        const double v = spline.eval(x);
        if ((maximize && v > best_v) || (!maximize && v < best_v)) {
            best_v = v;
            best_x = x;
        }
    }
    return best_x;
}

} // namespace

AkimaSpline GaitProfile::angle_spline() const { return column_spline(*this, &GaitSample::angle); }
AkimaSpline GaitProfile::torque_spline() const { return column_spline(*this, &GaitSample::torque); }
AkimaSpline GaitProfile::power_spline() const { return column_spline(*this, &GaitSample::power); }

double GaitProfile::max_dorsi_percent() const { return arg_extremum(angle_spline(), true); }
double GaitProfile::max_plantar_percent() const { return arg_extremum(angle_spline(), false); }

double angular_velocity(const GaitProfile& profile, const AkimaSpline& angle_spline,
                        double percent) {
    profile.validate();
    return angle_spline.deriv(percent) * 100.0 / profile.cadence_period;
}

SimulationTrace simulate_gait_cycle(const mech::DfGeometry& df_geom,
                                    const mech::ParallelSpringPair& df_pair,
                                    const mech::EesMechanism& ees,
                                    const std::optional<mech::ResetSpringDesign>& reset,
                                    const GaitProfile& profile, const GaitSchedule& schedule,
                                    double grid_step) {
    profile.validate();
    df_geom.validate();
    df_pair.validate();
    ees.validate();
    if (!(grid_step > 0.0 && grid_step <= 10.0))
        throw ConfigError("simulate: grid step must be in (0, 10] percent");

    const AkimaSpline angle = profile.angle_spline();
    const double onset = schedule.pushoff_onset_percent.value_or(profile.max_dorsi_percent());
    const double end = schedule.pushoff_end_percent.value_or(profile.max_plantar_percent());
    if (!(onset < end))
        throw ConfigError("simulate: push-off onset " + std::to_string(onset) +
                          "% must precede end " + std::to_string(end) + "%");

    // Reset spring sized for the sweep down to the profile's toe-off angle.
    double reset_k = 0.0;
    double theta_pf = 0.0;
    if (reset) {
        theta_pf = std::min(-1e-3, angle.eval(end));
        reset_k = mech::reset_spring_design(*reset, theta_pf).k;
    }

    SimulationTrace trace;
    trace.grid_step = grid_step;
    trace.cadence_period = profile.cadence_period;
    trace.body_mass = profile.body_mass;
    trace.pushoff_onset = onset;
    trace.pushoff_end = end;

    const double theta_r_start = df_geom.arc_theta_range[0];
    const double theta_r_end = df_geom.arc_theta_range[1];

    struct Sample {
        double theta_a, omega, tau_df, tau_ees, tau_reset;
    };
    auto sample_at = [&](double pct) {
        Sample s{};
        s.theta_a = angle.eval(pct);
        // rate in the torque's positive sense (plantar), so power = tau * omega
        s.omega = -angle.deriv(pct) * 100.0 / profile.cadence_period;

        // DF slider: parked at the arc start, swept across push-off, reset after.
        double theta_r = theta_r_start;
        double release_u = 0.0;
        if (pct >= onset && pct <= end) {
            release_u = (pct - onset) / (end - onset);
            theta_r = theta_r_start + release_u * (theta_r_end - theta_r_start);
        }
        const mech::AnkleState state{s.theta_a, pct / 100.0, s.omega};
        s.tau_df = mech::df_torque(df_geom, df_pair, state, theta_r).torque;

        // EES: aligned with the joint axis (no torque) outside the window.
        if (pct >= onset && pct <= end) {
            const double dx = ees.stroke * (1.0 - release_u);
            s.tau_ees = mech::ees_torque(ees, dx, release_u * ees.theta_r_final).torque;
        }
        if (reset && pct > end)
            s.tau_reset =
                mech::reset_torque(*reset, reset_k, std::clamp(s.theta_a, theta_pf, 0.0)).torque;
        return s;
    };

    const auto n = static_cast<std::size_t>(std::llround(100.0 / grid_step));
    for (std::size_t i = 0; i <= n; ++i) {
        const double pct = std::min(100.0, i * grid_step);
        const Sample s = sample_at(pct);
        const double tau_total = s.tau_df + s.tau_ees + s.tau_reset;
        trace.grid.push_back(pct);
        trace.angle.push_back(s.theta_a);
        trace.omega.push_back(s.omega);
        trace.torque_df.push_back(s.tau_df);
        trace.torque_ees.push_back(s.tau_ees);
        trace.torque_reset.push_back(s.tau_reset);
        trace.torque_total.push_back(tau_total);
        trace.power_total.push_back(tau_total * s.omega);
    }

    // Energies integrate the model at an eightfold-refined step so the
    // reported work is quadrature-converged independent of the trace grid.
    const std::size_t fine = 8 * n;
    const double fine_dt = profile.cadence_period / fine;
    double prev_df = 0.0, prev_ees = 0.0, prev_reset = 0.0, prev_tot = 0.0;
    for (std::size_t i = 0; i <= fine; ++i) {
        const double pct = std::min(100.0, 100.0 * i / fine);
        const Sample s = sample_at(pct);
        const double p_df = std::max(0.0, s.tau_df * s.omega);
        const double p_ees = std::max(0.0, s.tau_ees * s.omega);
        const double p_reset = std::max(0.0, s.tau_reset * s.omega);
        const double p_tot = std::max(0.0, (s.tau_df + s.tau_ees + s.tau_reset) * s.omega);
        if (i > 0) {
            trace.energy_df += 0.5 * (prev_df + p_df) * fine_dt;
            trace.energy_ees += 0.5 * (prev_ees + p_ees) * fine_dt;
            trace.energy_reset += 0.5 * (prev_reset + p_reset) * fine_dt;
            trace.energy_total += 0.5 * (prev_tot + p_tot) * fine_dt;
        }
        prev_df = p_df;
        prev_ees = p_ees;
        prev_reset = p_reset;
        prev_tot = p_tot;
    }
    return trace;
}

std::vector<double> power_profile(const SimulationTrace& trace) {
    std::vector<double> p(trace.grid.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = trace.torque_total[i] * trace.omega[i];
    return p;
}

double positive_work(const std::vector<double>& power, double seconds_per_step) {
    if (power.size() < 2) return 0.0;
    double work = 0.0;
    for (std::size_t i = 1; i < power.size(); ++i) {
        const double a = std::max(0.0, power[i - 1]);
        const double b = std::max(0.0, power[i]);
        work += 0.5 * (a + b) * seconds_per_step;
    }
    return work;
}

double energy(const SimulationTrace& trace) {
    return positive_work(trace.power_total, trace.seconds_per_step());
}

ComparisonMetrics compare(const std::vector<double>& reference,
                          const std::vector<double>& candidate,
                          const std::vector<double>& grid_percent, double seconds_per_step) {
    if (reference.size() != candidate.size() || reference.size() != grid_percent.size())
        throw ComputeError("compare: series grids differ (" + std::to_string(reference.size()) +
                           " vs " + std::to_string(candidate.size()) + " vs " +
                           std::to_string(grid_percent.size()) + ")");
    if (reference.empty()) throw ComputeError("compare: empty series");

    const std::size_t n = reference.size();
    ComparisonMetrics m;

    double sq = 0.0, peak_abs_ref = 0.0;
    double mean_r = 0.0, mean_c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = reference[i] - candidate[i];
        sq += d * d;
        peak_abs_ref = std::max(peak_abs_ref, std::abs(reference[i]));
        mean_r += reference[i];
        mean_c += candidate[i];
        if (i == 0 || reference[i] > m.peak_reference.value) {
            m.peak_reference = {reference[i], grid_percent[i]};
        }
        if (i == 0 || candidate[i] > m.peak_candidate.value) {
            m.peak_candidate = {candidate[i], grid_percent[i]};
        }
    }
    mean_r /= n;
    mean_c /= n;
    m.rmse = std::sqrt(sq / n);
    m.nrmse_percent = peak_abs_ref > 0.0 ? 100.0 * m.rmse / peak_abs_ref : 0.0;

    double cov = 0.0, var_r = 0.0, var_c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dr = reference[i] - mean_r;
        const double dc = candidate[i] - mean_c;
        cov += dr * dc;
        var_r += dr * dr;
        var_c += dc * dc;
    }
    if (var_r > 0.0 && var_c > 0.0) {
        m.pearson_r = std::clamp(cov / std::sqrt(var_r * var_c), -1.0, 1.0);
    } else {
        m.pearson_r = (m.rmse == 0.0) ? 1.0 : 0.0; // constant series
    }

    if (seconds_per_step > 0.0) {
        m.energy_reference = positive_work(reference, seconds_per_step);
        m.energy_candidate = positive_work(candidate, seconds_per_step);
    }
    return m;
}

std::vector<double> resample(const AkimaSpline& spline, const std::vector<double>& grid) {
    std::vector<double> out;
    out.reserve(grid.size());
    for (double x : grid) out.push_back(spline.eval(x));
    return out;
}

} // namespace anklekit::gait
