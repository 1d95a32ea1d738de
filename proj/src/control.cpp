#include "anklekit/control.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace anklekit::control {

void PidGains::validate() const {
    if (!(dt > 0.0)) throw ComputeError("pid: dt must be positive");
    if (kp < 0.0 || ki < 0.0 || kd < 0.0) throw ComputeError("pid: negative gain");
    if (!(u_max > u_min)) throw ComputeError("pid: empty saturation interval");
}

double pid_update(const PidGains& gains, double error, PidState& state) {
    if (!std::isfinite(error)) throw ComputeError("pid: non-finite error");
    state.integral += 0.5 * gains.dt * (error + state.prev_error);
    const double derivative = (error - state.prev_error) / gains.dt;
    state.prev_error = error;
    const double u = gains.kp * error + gains.ki * state.integral + gains.kd * derivative;
    return std::clamp(u, gains.u_min, gains.u_max);
}

void DobConfig::validate() const {
    if (!(g > 0.0)) throw ComputeError("dob: cutoff g must be positive");
    if (!(j_nominal > 0.0)) throw ComputeError("dob: nominal inertia must be positive");
    if (!(k_t > 0.0)) throw ComputeError("dob: torque constant must be positive");
}

DobUpdate dob_update(const DobConfig& config, double measured_velocity, double command_current,
                     double dt, DobState& state) {
    config.validate();
    if (!(dt > 0.0)) throw ComputeError("dob: dt must be positive");
    if (!std::isfinite(measured_velocity) || !std::isfinite(command_current))
        throw ComputeError("dob: non-finite input");

    // Compensate with the previous estimate; the filters below then see the
    // actually applied current, which breaks the algebraic loop.
    const double compensated = command_current - state.d_hat / config.k_t;

    const double k = 2.0 / dt;
    const double den = k + config.g;

    // Q(s) applied to K_t * applied current.
    const double qu = config.k_t * compensated;
    const double q_y =
        (config.g * (qu + state.q_u) - (config.g - k) * state.q_y) / den;
    state.q_u = qu;
    state.q_y = q_y;

    // Q(s) * J * s applied to the measured velocity (derivative folded in).
    const double h_y = (config.j_nominal * config.g * k * (measured_velocity - state.h_u) -
                        (config.g - k) * state.h_y) /
                       den;
    state.h_u = measured_velocity;
    state.h_y = h_y;

    state.d_hat = h_y - q_y;
    return {state.d_hat, compensated};
}

CubicVelocityRef cubic_velocity_reference(double v0, double vf, double acc0, double accf,
                                          double duration) {
    if (!(duration > 0.0)) throw ComputeError("cubic reference: duration must be positive");
    const double t = duration;
    const double delta = vf - v0 - acc0 * t;
    const double gamma = accf - acc0;
    CubicVelocityRef ref;
    ref.a = gamma / (t * t) - 2.0 * delta / (t * t * t);
    ref.b = 3.0 * delta / (t * t) - gamma / t;
    ref.c = acc0;
    ref.d = v0;
    ref.duration = duration;
    return ref;
}

std::vector<double> render_references(const std::vector<CubicVelocityRef>& segments, double dt) {
    if (!(dt > 0.0)) throw ComputeError("reference: dt must be positive");
    std::vector<double> out;
    for (const auto& seg : segments) {
        const auto n = static_cast<std::size_t>(std::llround(seg.duration / dt));
        const std::size_t start = out.empty() ? 0 : 1; // segment boundaries shared
        for (std::size_t i = start; i <= n; ++i) out.push_back(seg.eval(i * dt));
    }
    return out;
}

std::vector<double> ramp_reference(double t_start, double t_rise, double peak, double t_fall,
                                   double total, double dt) {
    if (!(dt > 0.0) || !(total > 0.0)) throw ComputeError("ramp: dt and total must be positive");
    const auto n = static_cast<std::size_t>(std::llround(total / dt));
    std::vector<double> out(n + 1, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = i * dt;
        if (t <= t_start) {
            out[i] = 0.0;
        } else if (t <= t_start + t_rise) {
            out[i] = peak * (t - t_start) / t_rise;
        } else if (t <= t_start + t_rise + t_fall) {
            out[i] = peak * (1.0 - (t - t_start - t_rise) / t_fall);
        } else {
            out[i] = 0.0;
        }
    }
    return out;
}

ClosedLoopTrace simulate_velocity_loop(const SecondOrderTf& plant, const PidGains& gains,
                                       const std::optional<DobConfig>& dob,
                                       const std::vector<double>& reference,
                                       const std::vector<double>& disturbance) {
    plant.validate();
    gains.validate();
    if (!disturbance.empty() && disturbance.size() != reference.size())
        throw ComputeError("loop: disturbance length must match the reference");

    ClosedLoopTrace trace;
    trace.dt = gains.dt;
    const std::size_t n = reference.size();
    trace.t.reserve(n);
    trace.reference.reserve(n);
    trace.measured.reserve(n);
    trace.control_effort.reserve(n);
    trace.disturbance_estimate.reserve(n);

    sysid::TfStepper stepper(plant, gains.dt);
    PidState pid;
    DobState dob_state;
    double y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ref = reference[i];
        const double error = ref - y;
        double u = pid_update(gains, error, pid);
        double d_hat = 0.0;
        if (dob) {
            const DobUpdate upd = dob_update(*dob, y, u, gains.dt, dob_state);
            d_hat = upd.disturbance_estimate;
            u = upd.compensated_command;
        }
        const double plant_in = u + (disturbance.empty() ? 0.0 : disturbance[i]);
        y = stepper.step(plant_in);
        if (!std::isfinite(y) || std::abs(y) > 1e9) {
            std::ostringstream os;
            os << "loop unstable at t = " << i * gains.dt << " s with gains kp=" << gains.kp
               << " ki=" << gains.ki << " kd=" << gains.kd;
            if (dob) os << " dob(g=" << dob->g << ", P=" << dob->inner_p << ")";
            throw ComputeError(os.str());
        }
        trace.t.push_back(i * gains.dt);
        trace.reference.push_back(ref);
        trace.measured.push_back(y);
        trace.control_effort.push_back(u);
        trace.disturbance_estimate.push_back(d_hat);
    }
    return trace;
}

ClosedLoopTrace simulate_velocity_loop(const SecondOrderTf& plant, const PidGains& gains,
                                       const std::optional<DobConfig>& dob,
                                       const std::vector<CubicVelocityRef>& reference_segments,
                                       const std::vector<double>& disturbance) {
    return simulate_velocity_loop(plant, gains, dob,
                                  render_references(reference_segments, gains.dt), disturbance);
}

} // namespace anklekit::control
