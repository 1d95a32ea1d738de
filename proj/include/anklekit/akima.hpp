#pragma once

#include <cstddef>
#include <vector>

#include "anklekit/errors.hpp"

namespace anklekit {

// Akima's 1970 local cubic interpolant. Passes through every knot, is C1 at
// interior knots, and a knot change only affects its two-segment
// neighborhood. Evaluation outside the knot span is an error.
class AkimaSpline {
public:
    AkimaSpline(std::vector<double> xs, std::vector<double> ys);

    double eval(double x) const;
    double deriv(double x) const;

    double x_min() const { return xs_.front(); }
    double x_max() const { return xs_.back(); }
    std::size_t knot_count() const { return xs_.size(); }

private:
    std::size_t segment_for(double x) const;

    std::vector<double> xs_;
    std::vector<double> ys_;
    // per-segment cubic: y = c0 + c1*h + c2*h^2 + c3*h^3, h = x - xs_[i]
    std::vector<double> c0_, c1_, c2_, c3_;
};

AkimaSpline akima_build(const std::vector<double>& xs, const std::vector<double>& ys);

inline double akima_eval(const AkimaSpline& s, double x) { return s.eval(x); }

} // namespace anklekit
