#pragma once

#include <optional>
#include <vector>

#include "anklekit/sysid.hpp"

namespace anklekit::control {

using sysid::SecondOrderTf;

struct PidGains {
    double kp = 0.0;
    double ki = 0.0;
    double kd = 0.0;
    double dt = 1e-3; // s
    // Output saturation, disabled by default.
    double u_min = -1e300;
    double u_max = 1e300;

    void validate() const;
};

// Explicit controller state; no hidden statics anywhere in the loop.
struct PidState {
    double integral = 0.0;
    double prev_error = 0.0;
};

// u = kp*e + ki * trapezoidal integral + kd * backward difference.
double pid_update(const PidGains& gains, double error, PidState& state);

struct DobConfig {
    double g = 0.0;         // low-pass cutoff, rad/s
    double j_nominal = 0.0; // lumped inertia (j_m * N^2), kg*m^2
    double k_t = 0.0;       // torque constant, N*m/A
    double inner_p = 0.0;   // proportional gain of the velocity loop

    void validate() const;
};

// States of the two bilinear first-order filters inside the observer plus
// the one-sample-delayed estimate used to break the compensation loop.
struct DobState {
    double q_u = 0.0, q_y = 0.0; // Q(s) = g/(s+g) on K_t * current
    double h_u = 0.0, h_y = 0.0; // Q(s)*J*s on measured velocity
    double d_hat = 0.0;
};

struct DobUpdate {
    double disturbance_estimate = 0.0; // same units as K_t * current
    double compensated_command = 0.0;  // current units
};

// One observer step: estimates the lumped input disturbance through
// Q(s) = g/(s+g) (the derivative folded into the filter, so no pure
// differentiation) and subtracts estimate/K_t from the command.
DobUpdate dob_update(const DobConfig& config, double measured_velocity, double command_current,
                     double dt, DobState& state);

// velocity = a*t^3 + b*t^2 + c*t + d over [0, duration]
struct CubicVelocityRef {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
    double duration = 0.0; // s

    double eval(double t) const { return ((a * t + b) * t + c) * t + d; }
    double accel(double t) const { return (3.0 * a * t + 2.0 * b) * t + c; }
};

// Unique cubic through the four boundary conditions.
CubicVelocityRef cubic_velocity_reference(double v0, double vf, double acc0, double accf,
                                          double duration);

// Concatenated segments sampled at dt (endpoint of each segment included once).
std::vector<double> render_references(const std::vector<CubicVelocityRef>& segments, double dt);

struct ClosedLoopTrace {
    double dt = 1e-3;
    std::vector<double> t;
    std::vector<double> reference;
    std::vector<double> measured;
    std::vector<double> control_effort;
    std::vector<double> disturbance_estimate;
};

// Fixed-step closed loop: reference -> error -> PID -> optional DOB
// compensation -> plant. `disturbance` is added at the plant input; empty
// means zero. Throws on numerical blow-up, naming the gain set.
ClosedLoopTrace simulate_velocity_loop(const SecondOrderTf& plant, const PidGains& gains,
                                       const std::optional<DobConfig>& dob,
                                       const std::vector<double>& reference,
                                       const std::vector<double>& disturbance);

ClosedLoopTrace simulate_velocity_loop(const SecondOrderTf& plant, const PidGains& gains,
                                       const std::optional<DobConfig>& dob,
                                       const std::vector<CubicVelocityRef>& reference_segments,
                                       const std::vector<double>& disturbance);

// Trapezoid reference: zero until t_start, rises to `peak` over `t_rise`,
// falls back to zero over `t_fall`, then holds zero until `total`.
std::vector<double> ramp_reference(double t_start, double t_rise, double peak, double t_fall,
                                   double total, double dt);

} // namespace anklekit::control
