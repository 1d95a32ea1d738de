#pragma once

#include <optional>
#include <string>
#include <vector>

#include "anklekit/akima.hpp"
#include "anklekit/mech.hpp"

namespace anklekit::gait {

// One stride of natural ankle data, heel-strike to heel-strike.
// Angles are dorsi-flexion positive; torques drive plantar-flexion when
// positive; power is positive when the ankle generates.
struct GaitSample {
    double percent = 0.0; // [0, 100]
    double angle = 0.0;   // rad
    double torque = 0.0;  // N*m (absolute, already scaled by body mass)
    double power = 0.0;   // W
};

struct GaitProfile {
    std::vector<GaitSample> samples;
    double body_mass = 0.0;      // kg
    double cadence_period = 0.0; // s per stride
    std::string speed_label;     // "normal" (1.3 m/s) or "fast" (1.6 m/s)

    void validate() const;

    std::vector<double> percents() const;
    AkimaSpline angle_spline() const;
    AkimaSpline torque_spline() const;
    AkimaSpline power_spline() const;

    double max_dorsi_percent() const;   // argmax of the angle spline
    double max_plantar_percent() const; // argmin of the angle spline
};

// Rate of the profile's angle coordinate: d(angle)/dt, dorsi-flexion
// positive, from the analytic spline derivative.
double angular_velocity(const GaitProfile& profile, const AkimaSpline& angle_spline,
                        double percent);

// Push-off window. Defaults: onset at max dorsi-flexion, end at max
// plantar-flexion of the driving profile.
struct GaitSchedule {
    std::optional<double> pushoff_onset_percent;
    std::optional<double> pushoff_end_percent;
};

struct SimulationTrace {
    double grid_step = 0.5;      // percent
    double cadence_period = 0.0; // s
    double body_mass = 0.0;      // kg
    double pushoff_onset = 0.0;  // percent
    double pushoff_end = 0.0;    // percent

    std::vector<double> grid;    // percent, 0..100
    std::vector<double> angle;   // rad, dorsi positive
    std::vector<double> omega;   // rad/s in the torque's positive sense
                                 // (plantar), so power = torque * omega
    std::vector<double> torque_df;
    std::vector<double> torque_ees;
    std::vector<double> torque_reset;
    std::vector<double> torque_total;
    std::vector<double> power_total;

    double energy_df = 0.0;    // J, positive work per source
    double energy_ees = 0.0;
    double energy_reset = 0.0;
    double energy_total = 0.0;

    double seconds_per_step() const { return cadence_period * grid_step / 100.0; }
};

// Drives the mechanisms through one stride of the profile's angles.
// The DF slider is held at the arc start through stance, sweeps linearly to
// the arc end across the push-off window, and resets for the next cycle.
// The EES spring releases only inside the window; the reset spring acts in
// swing.
SimulationTrace simulate_gait_cycle(const mech::DfGeometry& df_geom,
                                    const mech::ParallelSpringPair& df_pair,
                                    const mech::EesMechanism& ees,
                                    const std::optional<mech::ResetSpringDesign>& reset,
                                    const GaitProfile& profile, const GaitSchedule& schedule,
                                    double grid_step = 0.5);

// Pointwise torque * omega (identical to trace.power_total).
std::vector<double> power_profile(const SimulationTrace& trace);

// Positive work over the cycle, trapezoidal.
double energy(const SimulationTrace& trace);
double positive_work(const std::vector<double>& power, double seconds_per_step);

struct SeriesPeak {
    double value = 0.0;
    double percent = 0.0;
};

struct ComparisonMetrics {
    double rmse = 0.0;          // unit of the series
    double nrmse_percent = 0.0; // 100 * rmse / max|reference|
    double pearson_r = 0.0;
    SeriesPeak peak_reference;
    SeriesPeak peak_candidate;
    double energy_reference = 0.0; // J, filled when timing is provided
    double energy_candidate = 0.0;
};

// Series must share the grid. seconds_per_step > 0 also fills the energies.
ComparisonMetrics compare(const std::vector<double>& reference,
                          const std::vector<double>& candidate,
                          const std::vector<double>& grid_percent,
                          double seconds_per_step = 0.0);

// Resamples a profile column onto a trace grid through the Akima interpolant.
std::vector<double> resample(const AkimaSpline& spline, const std::vector<double>& grid);

} // namespace anklekit::gait
