#include "anklekit/akima.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace anklekit {

AkimaSpline::AkimaSpline(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
    const std::size_t n = xs_.size();
    if (n < 5) throw ComputeError("akima: need at least 5 knots, got " + std::to_string(n));
    if (ys_.size() != n) throw ComputeError("akima: x/y length mismatch");
    for (std::size_t i = 1; i < n; ++i) {
        if (!(xs_[i] > xs_[i - 1]))
            throw ComputeError("akima: knot abscissae must be strictly increasing (index " +
                               std::to_string(i) + ")");
    }

    // Segment slopes with two quadratic-extension phantoms on each side.
    std::vector<double> m(n + 3);
    for (std::size_t i = 0; i < n - 1; ++i)
        m[i + 2] = (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
    m[1] = 2.0 * m[2] - m[3];
    m[0] = 2.0 * m[1] - m[2];
    m[n + 1] = 2.0 * m[n] - m[n - 1];
    m[n + 2] = 2.0 * m[n + 1] - m[n];

    // Akima knot slopes: weighted by the opposite side's slope variation.
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double w1 = std::abs(m[i + 3] - m[i + 2]);
        const double w2 = std::abs(m[i + 1] - m[i]);
        if (w1 + w2 == 0.0) {
            t[i] = 0.5 * (m[i + 1] + m[i + 2]);
        } else {
            t[i] = (w1 * m[i + 1] + w2 * m[i + 2]) / (w1 + w2);
        }
    }

    c0_.resize(n - 1);
    c1_.resize(n - 1);
    c2_.resize(n - 1);
    c3_.resize(n - 1);
    for (std::size_t i = 0; i < n - 1; ++i) {
        const double dx = xs_[i + 1] - xs_[i];
        const double mi = m[i + 2];
        c0_[i] = ys_[i];
        c1_[i] = t[i];
        c2_[i] = (3.0 * mi - 2.0 * t[i] - t[i + 1]) / dx;
        c3_[i] = (t[i] + t[i + 1] - 2.0 * mi) / (dx * dx);
    }
}

std::size_t AkimaSpline::segment_for(double x) const {
    if (!(x >= xs_.front() && x <= xs_.back()))
        throw ComputeError("akima: evaluation at " + std::to_string(x) +
                           " outside knot span [" + std::to_string(xs_.front()) + ", " +
                           std::to_string(xs_.back()) + "]");
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - xs_.begin());
    if (i > 0) --i;
    if (i >= xs_.size() - 1) i = xs_.size() - 2;
    return i;
}

double AkimaSpline::eval(double x) const {
    const std::size_t i = segment_for(x);
    const double h = x - xs_[i];
    return c0_[i] + h * (c1_[i] + h * (c2_[i] + h * c3_[i]));
}

double AkimaSpline::deriv(double x) const {
    const std::size_t i = segment_for(x);
    const double h = x - xs_[i];
    return c1_[i] + h * (2.0 * c2_[i] + 3.0 * h * c3_[i]);
}

AkimaSpline akima_build(const std::vector<double>& xs, const std::vector<double>& ys) {
    return AkimaSpline(xs, ys);
}

} // namespace anklekit
