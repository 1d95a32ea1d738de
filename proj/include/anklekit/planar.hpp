#pragma once

#include <cmath>

#include "anklekit/errors.hpp"

namespace anklekit {

// Sagittal-plane vector. Meters for positions, newtons for forces.
// Axes: +x posterior (heel), +y up; dorsi-flexion is the +z (ccw) rotation.
struct PlanarVector {
    double x = 0.0;
    double y = 0.0;

    constexpr PlanarVector() = default;
    constexpr PlanarVector(double x_, double y_) : x(x_), y(y_) {}

    constexpr PlanarVector operator+(PlanarVector o) const { return {x + o.x, y + o.y}; }
    constexpr PlanarVector operator-(PlanarVector o) const { return {x - o.x, y - o.y}; }
    constexpr PlanarVector operator-() const { return {-x, -y}; }
    constexpr PlanarVector operator*(double s) const { return {x * s, y * s}; }

    double norm() const { return std::hypot(x, y); }
    constexpr double dot(PlanarVector o) const { return x * o.x + y * o.y; }

    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr PlanarVector operator*(double s, PlanarVector v) { return {v.x * s, v.y * s}; }

// z-component of a x b; the one torque expression used everywhere.
constexpr double cross_z(PlanarVector a, PlanarVector b) {
    return a.x * b.y - a.y * b.x;
}

// Counterclockwise rotation by `angle` radians about the origin.
inline PlanarVector rotate(PlanarVector v, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

inline void require_finite(PlanarVector v, const char* what) {
    if (!v.finite()) throw ComputeError(std::string(what) + ": non-finite vector");
}

} // namespace anklekit
