#pragma once

#include <array>
#include <utility>
#include <vector>

#include "anklekit/planar.hpp"

namespace anklekit::mech {

constexpr double kGravity = 9.80665; // m/s^2, exact by convention

// Ankle range-of-motion guard, radians (about -25.8 deg .. +17.2 deg).
constexpr double kThetaMin = -0.45;
constexpr double kThetaMax = 0.30;

// Pose of the ankle joint. Dorsi-flexion positive.
struct AnkleState {
    double theta_a = 0.0;      // rad
    double gait_percent = 0.0; // fraction of cycle, [0, 1]
    double omega = 0.0;        // rad/s, plantar-flexion positive (see gait.hpp)
};

void require_theta_in_rom(double theta_a);

// Geometry of the dorsi-flexion spring pack.
//
// Everything lives in the foot frame with the ankle joint at the origin.
// The spring runs from a foot-fixed anchor A near the toe to an attachment
// point that sits in an arc-shaped slider on the shank side. The shank-side
// chain is anchored at M = (-m_len, 0), offset by mo_offset to the arc
// center O, and the attachment rides the arc at angle theta_r:
//
//     B0(theta_r) = M + mo_offset + arc_radius * (-cos theta_r, sin theta_r)
//
// A dorsi-flexion of theta_a rotates the whole shank-side chain rigidly
// about the ankle joint, so the live attachment point is
// P(theta_a, theta_r) = rotate(B0(theta_r), theta_a). The foot anchor is
// A = M - l_m * (-cos theta_in, sin theta_in).
struct DfGeometry {
    double m_len = 0.0;              // |FM|, m
    double l_m = 0.0;                // |AM|, m
    double theta_in = 0.0;           // initial angle between AM and AB, rad
    PlanarVector mo_offset;          // M -> arc center O, m
    double arc_radius = 0.0;         // r, m
    std::array<double, 2> arc_theta_range{0.0, 0.0}; // [start, end], rad
    double y_b = 0.0;                // height of the arc-start attachment, m
    double free_length = 0.0;        // |AB| at zero deflection, m

    void validate() const;

    PlanarVector anchor_a() const;              // foot-fixed spring anchor
    PlanarVector arc_center_neutral() const;    // O at theta_a = 0
    PlanarVector slider_point_neutral(double theta_r) const; // B0(theta_r)
};

// Two compression springs in parallel; the shorter one engages after
// `engagement_offset` of travel. Force is continuous and piecewise linear.
struct ParallelSpringPair {
    double k1 = 0.0;                // N/m
    double k2 = 0.0;                // N/m
    double engagement_offset = 0.0; // m
    double max_deflection = 0.0;    // m, solid height guard

    void validate() const;
};

// Motorized extra-energy-storage spring riding its own orbital arc.
struct EesMechanism {
    double k_es = 0.0;           // N/m
    double stroke = 0.0;         // max deflection, m
    double orbital_radius = 0.0; // r_e, m
    double theta_r_final = 0.0;  // arc travel S -> S', rad
    PlanarVector attach_initial; // S
    PlanarVector attach_final;   // S'
    double force_override = 0.0; // >0: use this force magnitude instead of k*dx

    void validate() const;
};

// Reset (balancing) spring returning the foot to neutral after push-off.
struct ResetSpringDesign {
    double foot_mass = 0.0; // kg
    double l2 = 0.0;        // height difference lifted by the reset, m
    double beta = 0.0;      // cable angle, rad
    PlanarVector point_d;   // spring anchor
    PlanarVector point_a;   // rotation center of the attachment
    PlanarVector point_f;   // attachment at the neutral pose
    double theta_pf = 0.0;  // max plantar-flexion, rad (negative)
    double k_reset = 0.0;   // N/m, 0 until designed

    void validate() const;
};

// Force applied at a moment arm and the torque they produce about the ankle.
// torque is the z cross component, positive when driving plantar-flexion.
struct TorqueResult {
    double torque = 0.0;      // N*m
    PlanarVector force;       // N
    PlanarVector moment_arm;  // m

    static TorqueResult from(PlanarVector arm, PlanarVector force_n) {
        return {cross_z(arm, force_n), force_n, arm};
    }
};

// --- DF mechanism ----------------------------------------------------------

// Spring position vector A -> P for a given ankle angle and slider angle.
PlanarVector df_attachment_position(const DfGeometry& geom, double theta_a, double theta_r);

// Live attachment point P in the foot frame (moment arm from the joint).
PlanarVector df_attachment_point(const DfGeometry& geom, double theta_a, double theta_r);

// Compression of the DF springs. Clamped at zero: a compression spring
// disengages instead of pulling when |AP| exceeds the free length.
double df_deflection(const DfGeometry& geom, double theta_a, double theta_r);

// Force magnitude of the parallel pair at `deflection` [m].
double spring_force(const ParallelSpringPair& pair, double deflection);

// Energy stored at `deflection` (closed-form integral of spring_force).
double spring_stored_energy(const ParallelSpringPair& pair, double deflection);

// Ankle torque from the DF springs at the given pose.
TorqueResult df_torque(const DfGeometry& geom, const ParallelSpringPair& pair,
                       const AnkleState& state, double theta_r);

// Perpendicular distance from the joint to the spring line at a pose;
// also the deflection-vs-angle Jacobian |d delta / d theta_a|.
double df_moment_arm_perp(const DfGeometry& geom, double theta_a, double theta_r);

// Completes a geometry: places the arc center so the spring length is
// invariant along the arc at max dorsi-flexion, then finds the arc angle
// range so deflection is zero at the neutral start and at toe-off.
DfGeometry design_slider_arc(const DfGeometry& geom_partial, double theta_max_df,
                             double theta_toe_off);

// --- EES mechanism ---------------------------------------------------------

// Arc-travel moment arm S -> S' at slider angle theta_r.
PlanarVector ees_moment_arm(const EesMechanism& mech, double theta_r);

// Torque injected by the EES spring at the given deflection and arc angle.
TorqueResult ees_torque(const EesMechanism& mech, double deflection, double theta_r);

// Convenience: build an EES mechanism with consistent attachment points.
EesMechanism make_ees(double k_es, double stroke, double orbital_radius, double theta_r_final);

// --- Reset spring ----------------------------------------------------------

// Force needed to lift the foot compartment back to neutral.
double reset_required_force(const ResetSpringDesign& design);

struct ResetProfilePoint {
    double theta = 0.0; // rad
    TorqueResult torque;
    double deflection = 0.0; // m
};

struct ResetDesignResult {
    double k = 0.0; // N/m
    std::vector<ResetProfilePoint> profile; // theta from theta_pf to 0
};

// Sizes the reset spring stiffness and evaluates its torque over the
// plantar-flexion sweep [theta_pf, 0].
ResetDesignResult reset_spring_design(const ResetSpringDesign& design, double theta_pf,
                                      int samples = 80);

// Torque of an already-sized reset spring at a foot angle. Slack (zero) at
// and above neutral.
TorqueResult reset_torque(const ResetSpringDesign& design, double k, double theta);

} // namespace anklekit::mech
