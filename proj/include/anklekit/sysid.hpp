#pragma once

#include <cstdint>
#include <vector>

#include "anklekit/errors.hpp"

namespace anklekit::sysid {

// Linear sine sweep. All user-facing frequencies are in Hz; the 2*pi
// conversion happens once, inside chirp_generate.
struct ChirpSpec {
    double amplitude = 0.0; // V
    double offset = 0.0;    // V
    double omega1 = 0.0;    // start frequency, Hz
    double omega2 = 0.0;    // end frequency, Hz
    double duration = 0.0;  // M, s
    double dt = 0.0;        // sample period, s

    void validate() const;
};

// G(s) = b0 / (s^2 + a1*s + a0), stable for positive a1, a0.
struct SecondOrderTf {
    double b0 = 0.0;
    double a1 = 0.0;
    double a0 = 0.0;

    bool stable() const { return a1 > 0.0 && a0 > 0.0; }
    void validate() const;
    double dc_gain() const { return b0 / a0; }
};

struct FitReport {
    SecondOrderTf tf;
    double fit_percent = 0.0; // 100 * (1 - |y - yhat| / |y - mean(y)|)
    double residual_rms = 0.0;
};

// Samples u(t) = offset + A sin(2*pi*(w1*t + (w2 - w1)*t^2 / (2M))) on
// t in [0, M] at step dt.
std::vector<double> chirp_generate(const ChirpSpec& spec);

// Frequency of the sweep at time t, Hz.
double instantaneous_frequency(const ChirpSpec& spec, double t);

// One step of the bilinear-discretized transfer function.
class TfStepper {
public:
    TfStepper(const SecondOrderTf& tf, double dt);
    double step(double u);
    void reset() { s1_ = s2_ = 0.0; }

private:
    double b0_, b1_, b2_, a1_, a2_;
    double s1_ = 0.0, s2_ = 0.0;
};

// Zero-initial-condition simulation of the full input signal.
std::vector<double> tf_simulate(const SecondOrderTf& tf, const std::vector<double>& input,
                                double dt);

// Output-error least squares over (b0, a1, a0): deterministic multi-start on
// a fixed damping x natural-frequency grid, then coordinate refinement.
FitReport fit_second_order(const std::vector<double>& input, const std::vector<double>& output,
                           double dt);

// Deterministic zero-mean gaussian samples (Box-Muller over mt19937_64).
std::vector<double> gaussian_noise(std::size_t n, double sigma, std::uint64_t seed);

} // namespace anklekit::sysid
