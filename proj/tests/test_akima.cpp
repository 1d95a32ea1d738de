#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "anklekit/akima.hpp"

using anklekit::AkimaSpline;
using anklekit::ComputeError;

TEST_CASE("straight-line knots reproduce the line exactly") {
    std::vector<double> xs{-1.0, 0.3, 1.0, 2.7, 3.0, 4.5, 6.0};
    std::vector<double> ys;
    for (double x : xs) ys.push_back(3.0 * x - 2.0);
    const AkimaSpline s(xs, ys);
    for (int i = 0; i <= 200; ++i) {
        const double x = -1.0 + 7.0 * i / 200.0;
        CHECK(s.eval(x) == doctest::Approx(3.0 * x - 2.0).epsilon(1e-13));
        CHECK(s.deriv(x) == doctest::Approx(3.0).epsilon(1e-12));
    }
}

TEST_CASE("five-point reference value") {
    // hand-applied local slope scheme for knots (0,0)..(4,2):
    // segment slopes 0,0,1,1; both variation weights vanish at x=2 so the
    // knot slope is the average 0.5; at x=3 the left variation selects 1.
    // cubic on [2,3]: 0.5 h + h^2 - 0.5 h^3 -> 0.4375 at h = 0.5
    const AkimaSpline s({0, 1, 2, 3, 4}, {0, 0, 0, 1, 2});
    CHECK(s.eval(2.5) == doctest::Approx(0.4375).epsilon(1e-12));

    // independent in-test recomputation of the same scheme
    const double m[] = {0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0}; // padded by 2
    auto knot_slope = [&](int i) {
        const double w1 = std::abs(m[i + 3] - m[i + 2]);
        const double w2 = std::abs(m[i + 1] - m[i]);
        if (w1 + w2 == 0.0) return 0.5 * (m[i + 1] + m[i + 2]);
        return (w1 * m[i + 1] + w2 * m[i + 2]) / (w1 + w2);
    };
    const double t2 = knot_slope(2), t3 = knot_slope(3);
    const double h = 0.5;
    const double expected = 0.0 + t2 * h + (3.0 * 1.0 - 2.0 * t2 - t3) * h * h +
                            (t2 + t3 - 2.0 * 1.0) * h * h * h;
    CHECK(s.eval(2.5) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("knot exactness") {
    std::vector<double> xs{0.0, 0.7, 1.1, 2.0, 3.3, 4.1, 5.9, 7.0};
    std::vector<double> ys{1.0, -0.4, 2.2, 0.9, 0.9, -3.0, 4.4, 0.1};
    const AkimaSpline s(xs, ys);
    for (std::size_t i = 0; i < xs.size(); ++i)
        CHECK(s.eval(xs[i]) == doctest::Approx(ys[i]).epsilon(1e-12));
}

TEST_CASE("locality: a far knot change leaves a segment untouched") {
    std::vector<double> xs, ya, yb;
    for (int i = 0; i <= 10; ++i) {
        xs.push_back(i);
        ya.push_back(std::sin(0.8 * i));
        yb.push_back(ya.back());
    }
    yb[9] += 5.0; // beyond the two-neighbour stencil of segment [1,2]
    const AkimaSpline a(xs, ya), b(xs, yb);
    for (int i = 0; i <= 50; ++i) {
        const double x = 1.0 + i / 50.0;
        CHECK(a.eval(x) == b.eval(x));
    }
}

TEST_CASE("C1 continuity at interior knots") {
    std::vector<double> xs{0.0, 0.9, 2.0, 3.5, 4.0, 5.5, 6.3, 8.0};
    std::vector<double> ys{0.0, 1.7, -0.3, 0.4, 2.0, -1.0, 0.5, 0.0};
    const AkimaSpline s(xs, ys);
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
        const double d = 1e-12;
        CHECK(s.deriv(xs[i] - d) == doctest::Approx(s.deriv(xs[i] + d)).epsilon(1e-9));
    }
}

TEST_CASE("input guards") {
    CHECK_THROWS_AS(AkimaSpline({0, 1, 2, 3}, {0, 0, 0, 0}), ComputeError);
    CHECK_THROWS_AS(AkimaSpline({0, 1, 1, 2, 3}, {0, 0, 0, 0, 0}), ComputeError);
    const AkimaSpline s({0, 1, 2, 3, 4}, {0, 1, 0, 1, 0});
    CHECK_THROWS_AS(s.eval(-0.001), ComputeError);
    CHECK_THROWS_AS(s.eval(4.001), ComputeError);
    CHECK_NOTHROW(s.eval(0.0));
    CHECK_NOTHROW(s.eval(4.0));
}
