#include "anklekit/sysid.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>

namespace anklekit::sysid {

void ChirpSpec::validate() const {
    if (!(omega1 >= 0.0) || !(omega2 >= omega1))
        throw ComputeError("chirp: need omega2 >= omega1 >= 0");
    if (!(duration > 0.0)) throw ComputeError("chirp: duration must be positive");
    if (!(dt > 0.0)) throw ComputeError("chirp: dt must be positive");
    if (omega2 > 0.0 && dt > 0.5 / omega2)
        throw ComputeError("chirp: dt " + std::to_string(dt) +
                           " s violates Nyquist for " + std::to_string(omega2) + " Hz");
    if (!(amplitude >= 0.0)) throw ComputeError("chirp: negative amplitude");
}

std::vector<double> chirp_generate(const ChirpSpec& spec) {
    spec.validate();
    const std::size_t n = static_cast<std::size_t>(std::llround(spec.duration / spec.dt));
    std::vector<double> u(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = i * spec.dt;
        // phase in cycles, converted to radians once
        const double cycles =
            spec.omega1 * t + (spec.omega2 - spec.omega1) * t * t / (2.0 * spec.duration);
        u[i] = spec.offset + spec.amplitude * std::sin(2.0 * M_PI * cycles);
    }
    return u;
}

double instantaneous_frequency(const ChirpSpec& spec, double t) {
    spec.validate();
    if (t < 0.0 || t > spec.duration)
        throw ComputeError("chirp: time " + std::to_string(t) + " s outside [0, " +
                           std::to_string(spec.duration) + "]");
    return spec.omega1 + (spec.omega2 - spec.omega1) * t / spec.duration;
}

void SecondOrderTf::validate() const {
    if (!stable())
        throw ComputeError("transfer function rejected: a1 and a0 must be positive "
                           "(a1 = " + std::to_string(a1) + ", a0 = " + std::to_string(a0) + ")");
}

TfStepper::TfStepper(const SecondOrderTf& tf, double dt) {
    tf.validate();
    if (!(dt > 0.0)) throw ComputeError("tf simulation: dt must be positive");
    const double k = 2.0 / dt;
    const double d0 = k * k + tf.a1 * k + tf.a0;
    b0_ = tf.b0 / d0;
    b1_ = 2.0 * tf.b0 / d0;
    b2_ = tf.b0 / d0;
    a1_ = (-2.0 * k * k + 2.0 * tf.a0) / d0;
    a2_ = (k * k - tf.a1 * k + tf.a0) / d0;
}

double TfStepper::step(double u) {
    // transposed direct form II
    const double y = b0_ * u + s1_;
    s1_ = b1_ * u - a1_ * y + s2_;
    s2_ = b2_ * u - a2_ * y;
    return y;
}

std::vector<double> tf_simulate(const SecondOrderTf& tf, const std::vector<double>& input,
                                double dt) {
    TfStepper stepper(tf, dt);
    std::vector<double> out(input.size());
    for (std::size_t i = 0; i < input.size(); ++i) out[i] = stepper.step(input[i]);
    return out;
}

namespace {

struct Candidate {
    double zeta = 0.0;
    double fn = 0.0; // Hz
    double b0 = 0.0;
    double sse = std::numeric_limits<double>::infinity();
};

// Simulates the unit-numerator response and picks the optimal b0 in closed
// form. With b0* = <y,h>/<h,h> the residual is ||y||^2 - <y,h>^2/<h,h>, so a
// single accumulation pass suffices.
Candidate evaluate(double zeta, double fn, const std::vector<double>& u,
                   const std::vector<double>& y, double yy, double dt) {
    Candidate c;
    c.zeta = zeta;
    c.fn = fn;
    const double wn = 2.0 * M_PI * fn;
    SecondOrderTf tf{1.0, 2.0 * zeta * wn, wn * wn};
    if (!tf.stable()) return c;
    TfStepper stepper(tf, dt);
    double hh = 0.0, hy = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double h = stepper.step(u[i]);
        hh += h * h;
        hy += h * y[i];
    }
    if (!std::isfinite(hh) || hh <= 0.0) return c;
    c.b0 = hy / hh;
    const double sse = yy - hy * hy / hh;
    c.sse = std::isfinite(sse) ? std::max(0.0, sse) : std::numeric_limits<double>::infinity();
    return c;
}

// Deterministic 1-D minimization: log-spaced coarse scan, then golden-section
// inside the best bracket.
double minimize_coordinate(double lo, double hi, double current,
                           const std::function<double(double)>& cost) {
    constexpr int kScan = 48;
    const double llo = std::log(lo), lhi = std::log(hi);
    double best_x = current;
    double best_f = cost(current);
    int best_i = -1;
    for (int i = 0; i <= kScan; ++i) {
        const double x = std::exp(llo + (lhi - llo) * i / kScan);
        const double f = cost(x);
        if (f < best_f) {
            best_f = f;
            best_x = x;
            best_i = i;
        }
    }
    double a = llo, b = lhi;
    if (best_i >= 0) {
        a = llo + (lhi - llo) * std::max(0, best_i - 1) / kScan;
        b = llo + (lhi - llo) * std::min(kScan, best_i + 1) / kScan;
    } else {
        // coarse scan did not beat the incumbent; bracket around it
        const double lx = std::log(best_x);
        a = std::max(llo, lx - (lhi - llo) / kScan);
        b = std::min(lhi, lx + (lhi - llo) / kScan);
    }
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = cost(std::exp(x1)), f2 = cost(std::exp(x2));
    for (int it = 0; it < 120 && (b - a) > 1e-12; ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = cost(std::exp(x1));
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = cost(std::exp(x2));
        }
    }
    const double xm = std::exp(0.5 * (a + b));
    return cost(xm) <= best_f ? xm : best_x;
}

} // namespace

FitReport fit_second_order(const std::vector<double>& input, const std::vector<double>& output,
                           double dt) {
    if (input.size() != output.size())
        throw ComputeError("fit: input/output lengths differ");
    if (input.size() < 1000)
        throw ComputeError("fit: need at least 1000 samples, got " +
                           std::to_string(input.size()));
    if (!(dt > 0.0)) throw ComputeError("fit: dt must be positive");

    const double f_nyquist = 0.5 / dt;
    double yy = 0.0;
    for (double v : output) yy += v * v;

    // Fixed multi-start grid: damping ratio x natural frequency.
    std::vector<Candidate> starts;
    for (int zi = 0; zi < 5; ++zi) {
        const double zeta = 0.3 + (2.0 - 0.3) * zi / 4.0;
        for (int fi = 0; fi < 5; ++fi) {
            const double fn = (0.05 + (0.8 - 0.05) * fi / 4.0) * f_nyquist;
            starts.push_back(evaluate(zeta, fn, input, output, yy, dt));
        }
    }
    std::stable_sort(starts.begin(), starts.end(),
                     [](const Candidate& a, const Candidate& b) { return a.sse < b.sse; });
    if (!std::isfinite(starts.front().sse))
        throw ComputeError("fit: every start diverged; input may be degenerate "
                           "(all-zero or non-finite signals)");

    const double fn_lo = 1e-4, fn_hi = 0.999 * f_nyquist;
    const double zeta_lo = 0.05, zeta_hi = 20.0;

    Candidate best = starts.front();
    const std::size_t refine_count = std::min<std::size_t>(5, starts.size());
    for (std::size_t s = 0; s < refine_count; ++s) {
        Candidate c = starts[s];
        if (!std::isfinite(c.sse)) continue;
        double prev_sse = c.sse;
        for (int sweep = 0; sweep < 40; ++sweep) {
            c.fn = minimize_coordinate(fn_lo, fn_hi, c.fn, [&](double fn) {
                return evaluate(c.zeta, fn, input, output, yy, dt).sse;
            });
            c.zeta = minimize_coordinate(zeta_lo, zeta_hi, c.zeta, [&](double z) {
                return evaluate(z, c.fn, input, output, yy, dt).sse;
            });
            c = evaluate(c.zeta, c.fn, input, output, yy, dt);
            if (prev_sse - c.sse <= 1e-10 * std::max(1.0, c.sse)) break;
            prev_sse = c.sse;
        }
        if (c.sse < best.sse) best = c;
    }

    if (!std::isfinite(best.sse))
        throw ComputeError("fit: refinement diverged for every start");

    FitReport report;
    const double wn = 2.0 * M_PI * best.fn;
    report.tf = {best.b0, 2.0 * best.zeta * wn, wn * wn};
    report.residual_rms = std::sqrt(best.sse / output.size());

    double mean = 0.0;
    for (double v : output) mean += v;
    mean /= output.size();
    double denom = 0.0;
    for (double v : output) denom += (v - mean) * (v - mean);
    report.fit_percent =
        denom > 0.0 ? 100.0 * (1.0 - std::sqrt(best.sse / denom)) : (best.sse == 0.0 ? 100.0 : 0.0);
    return report;
}

std::vector<double> gaussian_noise(std::size_t n, double sigma, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(std::numeric_limits<double>::min(), 1.0);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; i += 2) {
        const double u1 = unif(rng);
        const double u2 = unif(rng);
        const double r = std::sqrt(-2.0 * std::log(u1));
        out[i] = sigma * r * std::cos(2.0 * M_PI * u2);
        if (i + 1 < n) out[i + 1] = sigma * r * std::sin(2.0 * M_PI * u2);
    }
    return out;
}

} // namespace anklekit::sysid
