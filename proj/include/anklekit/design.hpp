#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "anklekit/gait.hpp"
#include "anklekit/mech.hpp"

namespace anklekit::design {

// Required spring force vs. deflection, sampled along the loading sweep.
struct ForceDeflectionCurve {
    std::vector<std::pair<double, double>> points; // (deflection m, force N)

    void validate() const;
    double max_deflection() const { return points.empty() ? 0.0 : points.back().first; }
};

// Force the natural torque profile demands from the DF springs through the
// loading window (first positive dorsi-flexion up to maximum dorsi-flexion).
ForceDeflectionCurve derive_force_deflection(const gait::GaitProfile& profile,
                                             const mech::DfGeometry& geom);

struct SpringFitResult {
    mech::ParallelSpringPair pair;
    double sse = 0.0;
    double nrmse_percent = 0.0; // vs. peak force of the data
};

// Least-squares (k1, k2, engagement offset) fit: deterministic grid over the
// engagement offset (200 candidates, closed-form stiffnesses at each), then
// a golden-section polish between the winning candidate's neighbours.
SpringFitResult fit_parallel_springs(const ForceDeflectionCurve& curve);

struct EnergyBudget {
    double natural_pushoff_energy = 0.0; // J
    double df_released_energy = 0.0;     // J
    double deficit = 0.0;                // J, floored at zero
    double ees_required_stroke = 0.0;    // m
    double ees_required_k = 0.0;         // N/m
};

// Sizes the EES spring from the push-off energy the DF mechanism cannot
// supply: k = 2 * deficit / stroke^2.
EnergyBudget ees_energy_budget(const gait::GaitProfile& natural,
                               const gait::SimulationTrace& df_trace, double stroke);

struct BatterySpec {
    double cell_voltage_nominal = 0.0; // V
    double cell_capacity_ah = 0.0;     // Ah
    int cells_in_series = 0;
    double cell_mass = 0.0; // kg

    void validate() const;
    double pack_voltage() const { return cell_voltage_nominal * cells_in_series; }
    double pack_mass() const { return cell_mass * cells_in_series; }
    bool sufficient_for(double required_ah) const { return cell_capacity_ah >= required_ah; }
};

// Ah = (energy_per_step * steps / 3600) / nominal_voltage
double battery_capacity(double energy_per_step_j, double steps, double nominal_voltage_v);

// --- Geometry calibration ----------------------------------------------------

struct GeometryBounds {
    std::array<double, 2> m_len{0.0, 0.0};
    std::array<double, 2> l_m{0.0, 0.0};
    std::array<double, 2> theta_in{0.0, 0.0};
    std::array<double, 2> arc_radius{0.0, 0.0};
    // usable compression travel; free_length = arc_radius + spring_travel
    std::array<double, 2> spring_travel{0.0, 0.0};
    double theta_max_df = 0.0;  // rad; 0 = take from the profile
    double theta_toe_off = 0.0; // rad; 0 = take from the profile

    void validate() const;
};

struct CalibrationOptions {
    int restarts = 8;       // fixed restart lattice
    int max_sweeps = 6;     // coordinate-descent sweeps per restart
    std::uint64_t seed = 0; // affects evaluation order only, never the result
};

struct CalibrationResult {
    mech::DfGeometry geometry;
    mech::ParallelSpringPair pair;
    double nrmse_percent = 0.0; // DF torque vs. natural torque, full cycle
};

// Deterministic coordinate descent over the free geometry parameters with
// the slider arc re-designed at every step.
CalibrationResult calibrate_geometry(const gait::GaitProfile& profile,
                                     const GeometryBounds& bounds,
                                     const CalibrationOptions& options = {});

// Objective used by the calibration; exposed for tests and reporting.
double geometry_objective(const gait::GaitProfile& profile, const mech::DfGeometry& geom,
                          const mech::ParallelSpringPair& pair);

} // namespace anklekit::design
