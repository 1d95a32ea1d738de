#include "anklekit/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace anklekit::design {

void ForceDeflectionCurve::validate() const {
    if (points.size() < 5)
        throw ComputeError("force-deflection curve: need at least 5 points, got " +
                           std::to_string(points.size()));
    if (points.front().first != 0.0)
        throw ComputeError("force-deflection curve: deflections must start at 0");
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (!(points[i].first > points[i - 1].first))
            throw ComputeError("force-deflection curve: deflections not strictly increasing "
                               "at index " + std::to_string(i));
    }
    for (const auto& [x, f] : points) {
        (void)x;
        if (f < 0.0) throw ComputeError("force-deflection curve: negative force");
    }
}

ForceDeflectionCurve derive_force_deflection(const gait::GaitProfile& profile,
                                             const mech::DfGeometry& geom) {
    profile.validate();
    geom.validate();
    const double theta_r = geom.arc_theta_range[0];
    const double top = profile.max_dorsi_percent();

    std::vector<std::pair<double, double>> pts{{0.0, 0.0}};
    for (const auto& s : profile.samples) {
        if (s.percent > top) break;
        if (s.angle <= 0.0) continue; // loading window starts at neutral
        const double deflection = mech::df_deflection(geom, s.angle, theta_r);
        if (deflection <= 1e-9) continue;
        const double arm = mech::df_moment_arm_perp(geom, s.angle, theta_r);
        if (arm < 1e-6)
            throw ComputeError("force-deflection derivation: vanishing moment arm at " +
                               std::to_string(s.percent) + "%");
        pts.emplace_back(deflection, std::max(0.0, s.torque) / arm);
    }
    std::sort(pts.begin(), pts.end());
    ForceDeflectionCurve curve;
    for (const auto& p : pts) {
        if (!curve.points.empty() && p.first <= curve.points.back().first + 1e-12) continue;
        curve.points.push_back(p);
    }
    curve.validate();
    return curve;
}

namespace {

struct OffsetFit {
    double k1 = -1.0, k2 = -1.0, sse = std::numeric_limits<double>::infinity();
};

// Closed-form least squares for (k1, k2) at a fixed engagement offset.
OffsetFit fit_at_offset(const ForceDeflectionCurve& curve, double offset) {
    double s11 = 0.0, s12 = 0.0, s22 = 0.0, b1 = 0.0, b2 = 0.0;
    for (const auto& [x, f] : curve.points) {
        const double x2 = std::max(0.0, x - offset);
        s11 += x * x;
        s12 += x * x2;
        s22 += x2 * x2;
        b1 += x * f;
        b2 += x2 * f;
    }
    OffsetFit fit;
    const double det = s11 * s22 - s12 * s12;
    if (std::abs(det) > 1e-18 * std::max(1.0, s11 * s22)) {
        fit.k1 = (b1 * s22 - b2 * s12) / det;
        fit.k2 = (b2 * s11 - b1 * s12) / det;
    } else if (s11 > 0.0) {
        fit.k1 = b1 / s11; // second column degenerate: single-spring limit
        fit.k2 = 0.0;
    } else {
        return fit;
    }
    if (fit.k1 < 0.0 || fit.k2 < 0.0) {
        fit.sse = std::numeric_limits<double>::infinity();
        return fit;
    }
    double sse = 0.0;
    for (const auto& [x, f] : curve.points) {
        const double r = f - (fit.k1 * x + fit.k2 * std::max(0.0, x - offset));
        sse += r * r;
    }
    fit.sse = sse;
    return fit;
}

} // namespace

SpringFitResult fit_parallel_springs(const ForceDeflectionCurve& curve) {
    curve.validate();
    const double range = curve.max_deflection();
    constexpr int kCandidates = 200;

    int best_i = -1;
    OffsetFit best;
    for (int i = 1; i <= kCandidates; ++i) {
        const double offset = range * i / kCandidates;
        const OffsetFit fit = fit_at_offset(curve, offset);
        if (fit.sse < best.sse) {
            best = fit;
            best_i = i;
        }
    }
    if (best_i < 0) {
        std::ostringstream os;
        os << "spring fit rejected: every engagement candidate produced a negative "
              "stiffness (data range " << range << " m, " << curve.points.size() << " points)";
        throw ComputeError(os.str());
    }

    // Polish the offset between the winning candidate's neighbours.
    double lo = range * std::max(1, best_i - 1) / kCandidates;
    double hi = range * std::min(kCandidates, best_i + 1) / kCandidates;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = fit_at_offset(curve, x1).sse, f2 = fit_at_offset(curve, x2).sse;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * range; ++it) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = fit_at_offset(curve, x1).sse;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = fit_at_offset(curve, x2).sse;
        }
    }
    double offset = 0.5 * (lo + hi);
    OffsetFit polished = fit_at_offset(curve, offset);
    if (!(polished.sse <= best.sse)) {
        offset = range * best_i / kCandidates;
        polished = best;
    }
    if (polished.k1 < 0.0 || polished.k2 < 0.0)
        throw ComputeError("spring fit rejected: negative fitted stiffness (k1 = " +
                           std::to_string(polished.k1) + ", k2 = " +
                           std::to_string(polished.k2) + ")");

    SpringFitResult result;
    result.pair.k1 = polished.k1;
    result.pair.k2 = polished.k2;
    result.pair.engagement_offset = offset;
    result.pair.max_deflection = range * 1.25; // headroom above the observed sweep
    result.pair.validate();
    result.sse = polished.sse;
    double peak = 0.0;
    for (const auto& [x, f] : curve.points) {
        (void)x;
        peak = std::max(peak, f);
    }
    result.nrmse_percent =
        peak > 0.0 ? 100.0 * std::sqrt(polished.sse / curve.points.size()) / peak : 0.0;
    return result;
}

EnergyBudget ees_energy_budget(const gait::GaitProfile& natural,
                               const gait::SimulationTrace& df_trace, double stroke) {
    if (!(stroke > 0.0)) throw ComputeError("energy budget: stroke must be positive");
    const AkimaSpline natural_power = natural.power_spline();
    const double dt = df_trace.seconds_per_step();

    std::vector<double> nat, df;
    for (std::size_t i = 0; i < df_trace.grid.size(); ++i) {
        const double pct = df_trace.grid[i];
        if (pct < df_trace.pushoff_onset || pct > df_trace.pushoff_end) continue;
        nat.push_back(natural_power.eval(pct));
        df.push_back(df_trace.torque_df[i] * df_trace.omega[i]);
    }
    EnergyBudget budget;
    budget.natural_pushoff_energy = gait::positive_work(nat, dt);
    budget.df_released_energy = gait::positive_work(df, dt);
    budget.deficit = std::max(0.0, budget.natural_pushoff_energy - budget.df_released_energy);
    budget.ees_required_stroke = stroke;
    budget.ees_required_k = 2.0 * budget.deficit / (stroke * stroke);
    return budget;
}

void BatterySpec::validate() const {
    if (!(cell_voltage_nominal > 0.0) || !(cell_capacity_ah > 0.0) || cells_in_series <= 0 ||
        !(cell_mass > 0.0))
        throw ConfigError("battery spec: all fields must be positive");
}

double battery_capacity(double energy_per_step_j, double steps, double nominal_voltage_v) {
    if (!(energy_per_step_j >= 0.0) || !(steps >= 0.0) || !(nominal_voltage_v > 0.0))
        throw ComputeError("battery capacity: energy and steps must be non-negative, "
                           "voltage positive");
    const double watt_hours = energy_per_step_j * steps / 3600.0;
    return watt_hours / nominal_voltage_v;
}

// --- Calibration ---------------------------------------------------------------

void GeometryBounds::validate() const {
    auto check = [](const std::array<double, 2>& b, const char* name) {
        if (!(b[0] > 0.0) || !(b[1] >= b[0]))
            throw ConfigError(std::string("calibration bounds: bad interval for ") + name);
    };
    check(m_len, "m_len");
    check(l_m, "l_m");
    check(arc_radius, "arc_radius");
    check(spring_travel, "spring_travel");
    if (!(theta_in[1] >= theta_in[0]))
        throw ConfigError("calibration bounds: bad interval for theta_in");
}

double geometry_objective(const gait::GaitProfile& profile, const mech::DfGeometry& geom,
                          const mech::ParallelSpringPair& pair) {
    gait::SimulationTrace trace =
        gait::simulate_gait_cycle(geom, pair, mech::make_ees(0.0, 0.02, 0.1, 1.0), std::nullopt,
                                  profile, gait::GaitSchedule{}, 1.0);
    const std::vector<double> natural = gait::resample(profile.torque_spline(), trace.grid);
    const auto metrics = gait::compare(natural, trace.torque_df, trace.grid);
    return metrics.nrmse_percent;
}

namespace {

// Internal search axes. The spring travel (free_length - arc_radius) sets
// the torque scale almost on its own, so descending on it directly instead
// of on free_length keeps the objective well-conditioned per axis.
struct Params {
    double v[5]; // m_len, l_m, theta_in, arc_radius, travel
};

mech::DfGeometry geometry_from(const Params& p) {
    mech::DfGeometry g;
    g.m_len = p.v[0];
    g.l_m = p.v[1];
    g.theta_in = p.v[2];
    g.arc_radius = p.v[3];
    g.free_length = p.v[3] + p.v[4];
    return g;
}

} // namespace

CalibrationResult calibrate_geometry(const gait::GaitProfile& profile,
                                     const GeometryBounds& bounds,
                                     const CalibrationOptions& options) {
    profile.validate();
    bounds.validate();
    const double theta_max =
        bounds.theta_max_df != 0.0
            ? bounds.theta_max_df
            : profile.angle_spline().eval(profile.max_dorsi_percent());
    const double theta_toe =
        bounds.theta_toe_off != 0.0
            ? bounds.theta_toe_off
            : profile.angle_spline().eval(profile.max_plantar_percent());

    const std::array<std::array<double, 2>, 5> box{bounds.m_len, bounds.l_m, bounds.theta_in,
                                                   bounds.arc_radius, bounds.spring_travel};

    struct Evaluated {
        double residual = std::numeric_limits<double>::infinity();
        mech::DfGeometry geom;
        mech::ParallelSpringPair pair;
    };

    auto evaluate = [&](const Params& p) {
        Evaluated e;
        try {
            mech::DfGeometry g = design_slider_arc(geometry_from(p), theta_max, theta_toe);
            const ForceDeflectionCurve curve = derive_force_deflection(profile, g);
            const SpringFitResult fit = fit_parallel_springs(curve);
            e.residual = geometry_objective(profile, g, fit.pair);
            e.geom = g;
            e.pair = fit.pair;
        } catch (const ComputeError&) {
            // infeasible geometry; keep infinite residual
        }
        return e;
    };

    // Fixed restart lattice: bounds midpoint plus axis-aligned offsets.
    std::vector<Params> restarts;
    Params mid;
    for (int i = 0; i < 5; ++i) mid.v[i] = 0.5 * (box[i][0] + box[i][1]);
    restarts.push_back(mid);
    for (int r = 1; r < std::max(1, options.restarts); ++r) {
        Params p = mid;
        const int axis = (r - 1) % 5;
        const double f = (r % 2 == 1) ? 0.25 : 0.75;
        p.v[axis] = box[axis][0] + f * (box[axis][1] - box[axis][0]);
        restarts.push_back(p);
    }

    // The seed shuffles evaluation order only; the winner is the lowest
    // residual with the lowest original index, so results are seed-invariant.
    std::vector<std::size_t> order(restarts.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(options.seed);
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<Evaluated> results(restarts.size());
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    for (std::size_t idx : order) {
        Params p = restarts[idx];
        Evaluated cur = evaluate(p);
        for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
            const double before = cur.residual;
            for (int axis = 0; axis < 5; ++axis) {
                const double lo = box[axis][0], hi = box[axis][1];
                if (hi - lo <= 1e-12) continue;
                auto cost = [&](double x) {
                    Params q = p;
                    q.v[axis] = x;
                    return evaluate(q).residual;
                };
                // coarse scan then golden section
                double best_x = p.v[axis], best_f = cur.residual;
                for (int i = 0; i <= 12; ++i) {
                    const double x = lo + (hi - lo) * i / 12.0;
                    const double f = cost(x);
                    if (f < best_f) {
                        best_f = f;
                        best_x = x;
                    }
                }
                double a = std::max(lo, best_x - (hi - lo) / 12.0);
                double b = std::min(hi, best_x + (hi - lo) / 12.0);
                double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
                double f1 = cost(x1), f2 = cost(x2);
                for (int it = 0; it < 40 && b - a > 1e-10; ++it) {
                    if (f1 <= f2) {
                        b = x2;
                        x2 = x1;
                        f2 = f1;
                        x1 = b - gr * (b - a);
                        f1 = cost(x1);
                    } else {
                        a = x1;
                        x1 = x2;
                        f1 = f2;
                        x2 = a + gr * (b - a);
                        f2 = cost(x2);
                    }
                }
                const double xm = 0.5 * (a + b);
                const double fm = cost(xm);
                if (fm < best_f) {
                    best_f = fm;
                    best_x = xm;
                }
                if (best_f < cur.residual) {
                    p.v[axis] = best_x;
                    cur = evaluate(p);
                }
            }
            if (before - cur.residual <= 1e-6) break;
        }
        results[idx] = cur;
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < results.size(); ++i) {
        if (results[i].residual < results[best].residual) best = i;
    }
    if (!std::isfinite(results[best].residual)) {
        double best_seen = std::numeric_limits<double>::infinity();
        for (const auto& r : results) best_seen = std::min(best_seen, r.residual);
        throw ComputeError("calibration failed: no feasible geometry inside the bounds "
                           "(best residual " + std::to_string(best_seen) + ")");
    }

    CalibrationResult out;
    out.geometry = results[best].geom;
    out.pair = results[best].pair;
    out.nrmse_percent = results[best].residual;
    return out;
}

} // namespace anklekit::design
