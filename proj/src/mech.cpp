#include "anklekit/mech.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace anklekit::mech {

namespace {

constexpr double kBisectResidual = 1e-13; // m, below the 1e-12 contract

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

} // namespace

void require_theta_in_rom(double theta_a) {
    if (!(theta_a >= kThetaMin && theta_a <= kThetaMax)) {
        throw ComputeError("ankle angle " + fmt(theta_a) +
                           " rad outside physical range [" + fmt(kThetaMin) + ", " +
                           fmt(kThetaMax) + "]");
    }
}

// --- DfGeometry -------------------------------------------------------------

void DfGeometry::validate() const {
    if (!(m_len > 0.0) || !(l_m > 0.0) || !(arc_radius > 0.0) || !(free_length > 0.0))
        throw ComputeError("DF geometry: lengths must be strictly positive");
    require_finite(mo_offset, "DF geometry mo_offset");
    if (!(arc_theta_range[1] >= arc_theta_range[0]))
        throw ComputeError("DF geometry: arc range not ordered");
    if (arc_theta_range[1] - arc_theta_range[0] > M_PI + 1e-12)
        throw ComputeError("DF geometry: arc range wider than pi");
}

PlanarVector DfGeometry::anchor_a() const {
    // A = M - AM with M = (-m_len, 0) and AM = l_m * (-cos theta_in, sin theta_in)
    return {-m_len + l_m * std::cos(theta_in), -l_m * std::sin(theta_in)};
}

PlanarVector DfGeometry::arc_center_neutral() const {
    return PlanarVector{-m_len, 0.0} + mo_offset;
}

PlanarVector DfGeometry::slider_point_neutral(double theta_r) const {
    return arc_center_neutral() +
           PlanarVector{-arc_radius * std::cos(theta_r), arc_radius * std::sin(theta_r)};
}

namespace {

bool arc_range_defined(const DfGeometry& g) {
    return g.arc_theta_range[0] != 0.0 || g.arc_theta_range[1] != 0.0;
}

void require_theta_r_in_arc(const DfGeometry& g, double theta_r) {
    if (!arc_range_defined(g)) return; // hand-built geometry without a designed arc
    if (theta_r < g.arc_theta_range[0] - 1e-9 || theta_r > g.arc_theta_range[1] + 1e-9)
        throw ComputeError("slider angle " + fmt(theta_r) + " rad outside arc range [" +
                           fmt(g.arc_theta_range[0]) + ", " + fmt(g.arc_theta_range[1]) + "]");
}

} // namespace

PlanarVector df_attachment_point(const DfGeometry& geom, double theta_a, double theta_r) {
    require_theta_in_rom(theta_a);
    require_theta_r_in_arc(geom, theta_r);
    // The shank-side chain rotates rigidly about the ankle joint.
    return rotate(geom.slider_point_neutral(theta_r), theta_a);
}

PlanarVector df_attachment_position(const DfGeometry& geom, double theta_a, double theta_r) {
    return df_attachment_point(geom, theta_a, theta_r) - geom.anchor_a();
}

double df_deflection(const DfGeometry& geom, double theta_a, double theta_r) {
    const double length = df_attachment_position(geom, theta_a, theta_r).norm();
    return std::max(0.0, geom.free_length - length);
}

// --- ParallelSpringPair ------------------------------------------------------

void ParallelSpringPair::validate() const {
    if (k1 < 0.0 || k2 < 0.0) throw ComputeError("spring pair: negative stiffness");
    if (engagement_offset < 0.0) throw ComputeError("spring pair: negative engagement offset");
    if (!(max_deflection > engagement_offset))
        throw ComputeError("spring pair: max_deflection must exceed engagement_offset");
}

double spring_force(const ParallelSpringPair& pair, double deflection) {
    if (deflection < 0.0) throw ComputeError("spring deflection negative");
    if (deflection > pair.max_deflection + 1e-12)
        throw ComputeError("spring driven past solid height: " + fmt(deflection) + " m > " +
                           fmt(pair.max_deflection) + " m");
    double f = pair.k1 * deflection;
    if (deflection > pair.engagement_offset)
        f += pair.k2 * (deflection - pair.engagement_offset);
    return f;
}

double spring_stored_energy(const ParallelSpringPair& pair, double deflection) {
    if (deflection < 0.0) throw ComputeError("spring deflection negative");
    double e = 0.5 * pair.k1 * deflection * deflection;
    if (deflection > pair.engagement_offset) {
        const double x2 = deflection - pair.engagement_offset;
        e += 0.5 * pair.k2 * x2 * x2;
    }
    return e;
}

// --- DF torque ---------------------------------------------------------------

double df_moment_arm_perp(const DfGeometry& geom, double theta_a, double theta_r) {
    const PlanarVector a = geom.anchor_a();
    const PlanarVector p = df_attachment_point(geom, theta_a, theta_r);
    const PlanarVector ap = p - a;
    const double len = ap.norm();
    if (len < 1e-9) throw ComputeError("DF geometry degenerate: attachment collapsed onto anchor");
    return std::abs(cross_z(a, p)) / len;
}

TorqueResult df_torque(const DfGeometry& geom, const ParallelSpringPair& pair,
                       const AnkleState& state, double theta_r) {
    const PlanarVector a = geom.anchor_a();
    const PlanarVector p = df_attachment_point(geom, state.theta_a, theta_r);
    const PlanarVector ap = p - a;
    const double len = ap.norm();
    if (len < 1e-9) throw ComputeError("DF geometry degenerate: zero-length moment arm");
    const double deflection = std::max(0.0, geom.free_length - len);
    const double magnitude = spring_force(pair, deflection);
    // Force on the foot side, directed along the spring line toward A.
    const PlanarVector force = (a - p) * (magnitude / len);
    return TorqueResult::from(p, force);
}

// --- Slider arc design --------------------------------------------------------

namespace {

// |AP| - free_length at a pose, as a function of the slider angle.
double spring_residual(const DfGeometry& g, double theta_a, double theta_r) {
    const PlanarVector b0 = g.slider_point_neutral(theta_r);
    const PlanarVector p = rotate(b0, theta_a);
    return (p - g.anchor_a()).norm() - g.free_length;
}

std::vector<double> residual_roots(const DfGeometry& g, double theta_a) {
    constexpr int kSamples = 1440;
    std::vector<double> roots;
    double prev_theta = -M_PI;
    double prev_val = spring_residual(g, theta_a, prev_theta);
    for (int i = 1; i <= kSamples; ++i) {
        const double theta = -M_PI + 2.0 * M_PI * i / kSamples;
        const double val = spring_residual(g, theta_a, theta);
        if (val == 0.0) {
            roots.push_back(theta);
        } else if (prev_val * val < 0.0) {
            double lo = prev_theta, hi = theta;
            double flo = prev_val;
            for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fmid = spring_residual(g, theta_a, mid);
                if (std::abs(fmid) < kBisectResidual) {
                    lo = hi = mid;
                    break;
                }
                if (flo * fmid <= 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fmid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev_theta = theta;
        prev_val = val;
    }
    return roots;
}

bool deflection_increasing_with_dorsi(const DfGeometry& g, double theta_r, double theta_lo,
                                      double theta_hi) {
    double prev = -1e300;
    for (int i = 1; i <= 4; ++i) {
        const double theta = theta_lo + (theta_hi - theta_lo) * i / 4.0;
        const double d = g.free_length - (rotate(g.slider_point_neutral(theta_r), theta) -
                                          g.anchor_a())
                                             .norm();
        if (d < prev - 1e-12) return false;
        prev = d;
    }
    return prev > 1e-9; // must actually compress at the top of the sweep
}

} // namespace

DfGeometry design_slider_arc(const DfGeometry& geom_partial, double theta_max_df,
                             double theta_toe_off) {
    if (!(theta_max_df > 0.0) || !(theta_toe_off < 0.0))
        throw ComputeError("slider arc design needs theta_max_df > 0 > theta_toe_off");
    require_theta_in_rom(theta_max_df);
    require_theta_in_rom(theta_toe_off);
    if (!(geom_partial.m_len > 0.0) || !(geom_partial.l_m > 0.0) ||
        !(geom_partial.arc_radius > 0.0) || !(geom_partial.free_length > 0.0))
        throw ComputeError("slider arc design: lengths must be strictly positive");
    if (!(geom_partial.free_length > geom_partial.arc_radius))
        throw ComputeError("slider arc design infeasible: free length " +
                           fmt(geom_partial.free_length) + " m must exceed arc radius " +
                           fmt(geom_partial.arc_radius) + " m (their difference is the "
                           "usable spring travel)");

    DfGeometry g = geom_partial;
    g.arc_theta_range = {0.0, 0.0};

    // Isometry: at max dorsi-flexion the rotated arc center must land on the
    // anchor A, making |AP| = arc_radius for every slider angle. Solving
    // rotate(M + mo, theta_max) = A for mo gives the center in closed form.
    const PlanarVector m0{-g.m_len, 0.0};
    g.mo_offset = rotate(g.anchor_a(), -theta_max_df) - m0;

    // Remaining unknowns: the arc angles where the spring sits exactly at its
    // free length, at the neutral pose (start) and at toe-off (end).
    const std::vector<double> start_roots = residual_roots(g, 0.0);
    const std::vector<double> end_roots = residual_roots(g, theta_toe_off);

    if (start_roots.empty() || end_roots.empty()) {
        const double r0 = spring_residual(g, 0.0, 0.0);
        const double r1 = spring_residual(g, theta_toe_off, 0.0);
        throw ComputeError(
            "slider arc design infeasible: free-length circle does not intersect the arc "
            "(neutral residual " + fmt(r0) + " m, toe-off residual " + fmt(r1) + " m)");
    }

    double best_start = 0.0, best_end = 0.0, best_width = 1e300;
    for (double s : start_roots) {
        for (double e : end_roots) {
            const double width = e - s;
            if (width <= 1e-9 || width > M_PI) continue;
            if (!deflection_increasing_with_dorsi(g, s, 0.0, theta_max_df)) continue;
            if (!deflection_increasing_with_dorsi(g, e, theta_toe_off, theta_max_df)) continue;
            if (width < best_width - 1e-12 ||
                (std::abs(width - best_width) <= 1e-12 && s < best_start)) {
                best_width = width;
                best_start = s;
                best_end = e;
            }
        }
    }
    if (best_width == 1e300) {
        std::ostringstream os;
        os << "slider arc design infeasible: no start/end pairing stores on dorsi-flexion"
           << " (start candidates:";
        for (double s : start_roots) os << ' ' << fmt(s);
        os << "; end candidates:";
        for (double e : end_roots) os << ' ' << fmt(e);
        os << ")";
        throw ComputeError(os.str());
    }

    g.arc_theta_range = {best_start, best_end};
    g.y_b = g.slider_point_neutral(best_start).y;
    g.validate();
    return g;
}

// --- EES ----------------------------------------------------------------------

void EesMechanism::validate() const {
    if (!(stroke > 0.0)) throw ComputeError("EES: stroke must be positive");
    if (!(orbital_radius > 0.0)) throw ComputeError("EES: orbital radius must be positive");
    if (!(theta_r_final > 0.0 && theta_r_final < M_PI))
        throw ComputeError("EES: arc travel must lie in (0, pi)");
    if (k_es < 0.0 || force_override < 0.0) throw ComputeError("EES: negative force parameter");
    const double chord = (attach_final - attach_initial).norm();
    const double expected = 2.0 * orbital_radius * std::sin(0.5 * theta_r_final);
    if (std::abs(chord - expected) > 1e-9 * std::max(1.0, expected))
        throw ComputeError("EES: attachment chord " + fmt(chord) +
                           " m inconsistent with arc travel (expected " + fmt(expected) + " m)");
}

EesMechanism make_ees(double k_es, double stroke, double orbital_radius, double theta_r_final) {
    EesMechanism m;
    m.k_es = k_es;
    m.stroke = stroke;
    m.orbital_radius = orbital_radius;
    m.theta_r_final = theta_r_final;
    m.attach_initial = {0.0, 0.0};
    m.attach_final = {-orbital_radius * std::sin(theta_r_final),
                      orbital_radius * (1.0 - std::cos(theta_r_final))};
    m.validate();
    return m;
}

PlanarVector ees_moment_arm(const EesMechanism& mech, double theta_r) {
    if (theta_r < 0.0 || theta_r > mech.theta_r_final + 1e-12)
        throw ComputeError("EES slider angle " + fmt(theta_r) + " rad outside [0, " +
                           fmt(mech.theta_r_final) + "]");
    return {-mech.orbital_radius * std::sin(theta_r),
            mech.orbital_radius * (1.0 - std::cos(theta_r))};
}

TorqueResult ees_torque(const EesMechanism& mech, double deflection, double theta_r) {
    if (deflection < 0.0) throw ComputeError("EES deflection negative");
    if (deflection > mech.stroke + 1e-12)
        throw ComputeError("EES driven past its stroke: " + fmt(deflection) + " m > " +
                           fmt(mech.stroke) + " m");
    const PlanarVector arm = ees_moment_arm(mech, theta_r);
    const double magnitude =
        mech.force_override > 0.0 ? mech.force_override : mech.k_es * deflection;
    // Reaction onto the joint; the sign pairs with the arm so the injected
    // torque drives plantar-flexion (positive) along the arc travel.
    const PlanarVector force{-magnitude * std::sin(theta_r), -magnitude * std::cos(theta_r)};
    return TorqueResult::from(arm, force);
}

// --- Reset spring ---------------------------------------------------------------

void ResetSpringDesign::validate() const {
    if (!(foot_mass > 0.0)) throw ComputeError("reset spring: foot mass must be positive");
    if (!(l2 > 0.0)) throw ComputeError("reset spring: height difference must be positive");
    if (std::abs(std::cos(beta)) <= 1e-6)
        throw ComputeError("reset spring: cable angle beta too close to pi/2");
    require_finite(point_d, "reset point D");
    require_finite(point_a, "reset point A");
    require_finite(point_f, "reset point F");
}

namespace {

PlanarVector reset_attachment(const ResetSpringDesign& d, double theta) {
    // The attachment rotates about A with the foot.
    return rotate(d.point_f - d.point_a, theta);
}

PlanarVector reset_spring_vector(const ResetSpringDesign& d, double theta) {
    // Chain D -> A -> F'(theta).
    return (d.point_a - d.point_d) + reset_attachment(d, theta);
}

} // namespace

double reset_required_force(const ResetSpringDesign& design) {
    design.validate();
    const double travel =
        (reset_attachment(design, design.theta_pf) - reset_attachment(design, 0.0)).norm();
    if (travel <= 1e-12)
        throw ComputeError("reset spring: attachment does not move over the sweep");
    return design.foot_mass * kGravity * design.l2 / (travel * std::cos(design.beta));
}

TorqueResult reset_torque(const ResetSpringDesign& design, double k, double theta) {
    design.validate();
    if (k < 0.0) throw ComputeError("reset spring: negative stiffness");
    const double rest_len = reset_spring_vector(design, 0.0).norm();
    const PlanarVector axis = reset_spring_vector(design, theta);
    const double len = axis.norm();
    if (len < 1e-9) throw ComputeError("reset spring: degenerate axis");
    const double stretch = std::max(0.0, len - rest_len);
    const PlanarVector force = axis * (k * stretch / len);
    return TorqueResult::from(design.point_d - design.point_a, force);
}

ResetDesignResult reset_spring_design(const ResetSpringDesign& design, double theta_pf,
                                      int samples) {
    design.validate();
    if (!(theta_pf < 0.0)) throw ComputeError("reset spring: theta_pf must be negative");
    if (samples < 2) throw ComputeError("reset spring: need at least 2 samples");

    ResetSpringDesign d = design;
    d.theta_pf = theta_pf;

    const double rest_len = reset_spring_vector(d, 0.0).norm();
    const double stretch_pf = reset_spring_vector(d, theta_pf).norm() - rest_len;
    if (stretch_pf <= 0.0)
        throw ComputeError("reset spring: geometry degenerate, spring does not stretch "
                           "toward max plantar-flexion (dx = " + fmt(stretch_pf) + " m)");

    ResetDesignResult out;
    out.k = reset_required_force(d) / stretch_pf;

    out.profile.reserve(samples + 1);
    for (int i = 0; i <= samples; ++i) {
        const double theta = theta_pf + (0.0 - theta_pf) * i / samples;
        ResetProfilePoint pt;
        pt.theta = theta;
        pt.deflection = std::max(0.0, reset_spring_vector(d, theta).norm() - rest_len);
        pt.torque = reset_torque(d, out.k, theta);
        out.profile.push_back(pt);
    }
    return out;
}

} // namespace anklekit::mech
