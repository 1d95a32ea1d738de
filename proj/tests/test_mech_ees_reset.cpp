#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "anklekit/mech.hpp"

using namespace anklekit;
using namespace anklekit::mech;

TEST_CASE("ees moment arm follows the orbital arc") {
    const EesMechanism m = make_ees(45000.0, 0.020, 0.1, 1.6);

    const PlanarVector at0 = ees_moment_arm(m, 0.0);
    CHECK(at0.x == 0.0);
    CHECK(at0.y == 0.0);

    const PlanarVector quarter = ees_moment_arm(m, M_PI / 2.0);
    CHECK(quarter.x == doctest::Approx(-0.1).epsilon(1e-12));
    CHECK(quarter.y == doctest::Approx(0.1).epsilon(1e-12));

    // chord length at the end of travel matches 2 r sin(theta/2)
    const double chord = ees_moment_arm(m, m.theta_r_final).norm();
    CHECK(chord ==
          doctest::Approx(2.0 * m.orbital_radius * std::sin(0.5 * m.theta_r_final))
              .epsilon(1e-12));
    CHECK(chord == doctest::Approx((m.attach_final - m.attach_initial).norm()).epsilon(1e-12));

    CHECK_THROWS_AS(ees_moment_arm(m, -0.1), ComputeError);
    CHECK_THROWS_AS(ees_moment_arm(m, 1.7), ComputeError);
}

TEST_CASE("ees mechanism validation") {
    EesMechanism bad = make_ees(45000.0, 0.020, 0.1, 1.6);
    bad.attach_final.x += 1e-6; // breaks the chord invariant
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("chord"), ComputeError);
    CHECK_THROWS_AS(make_ees(1000.0, -0.02, 0.1, 1.5), ComputeError);
    CHECK_THROWS_AS(make_ees(1000.0, 0.02, 0.1, 3.5), ComputeError);
}

TEST_CASE("ees torque magnitudes") {
    const EesMechanism m = make_ees(45000.0, 0.020, 0.155, 1.35);

    // no deflection, no force, no torque
    CHECK(ees_torque(m, 0.0, 0.7).torque == 0.0);

    // force law: 45 N/mm at 19 mm
    const TorqueResult t19 = ees_torque(m, 0.019, 0.7);
    CHECK(t19.force.norm() == doctest::Approx(855.0).epsilon(1e-12));

    // reported release force produces the reported torque through a 0.15 m arm
    EesMechanism reported = m;
    reported.force_override = 256.50;
    const double theta_r = std::asin(0.150 / reported.orbital_radius);
    const TorqueResult tr = ees_torque(reported, 0.019, theta_r);
    CHECK(tr.torque == doctest::Approx(38.5).epsilon(0.01));
    CHECK(tr.torque > 0.0); // plantar-flexion assist

    // torque is the cross product of the stored arm and force, exactly
    CHECK(tr.torque == tr.moment_arm.x * tr.force.y - tr.moment_arm.y * tr.force.x);

    // |tau| = r_e |F| sin(theta_r) across the travel
    for (int i = 1; i <= 10; ++i) {
        const double th = m.theta_r_final * i / 10.0;
        const TorqueResult t = ees_torque(m, 0.012, th);
        CHECK(t.torque == doctest::Approx(m.orbital_radius * 45000.0 * 0.012 * std::sin(th))
                              .epsilon(1e-9));
    }

    CHECK_THROWS_WITH_AS(ees_torque(m, 0.021, 0.7), doctest::Contains("stroke"), ComputeError);
}

namespace {

ResetSpringDesign simple_reset(double l2, double beta, double theta_pf) {
    ResetSpringDesign d;
    d.foot_mass = 2.0;
    d.l2 = l2;
    d.beta = beta;
    d.point_d = {0.0, 0.12};
    d.point_a = {0.0, 0.0};
    d.point_f = {0.1, 0.0};
    d.theta_pf = theta_pf;
    return d;
}

ResetSpringDesign default_reset() {
    // shipped defaults (fast_walk.json)
    ResetSpringDesign d;
    d.foot_mass = 0.9;
    d.l2 = 0.045;
    d.beta = 0.15;
    d.point_d = {0.05, 0.10};
    d.point_a = {0.06, -0.02};
    d.point_f = {0.11, -0.02};
    d.theta_pf = -0.345;
    return d;
}

} // namespace

TEST_CASE("reset required force") {
    // |FF'| = 2 * 0.1 * sin(30 deg) = 0.1, beta = 0:
    // F = m g l2 / |FF'| = 2 * 9.80665 * 0.05 / 0.1
    ResetSpringDesign d = simple_reset(0.05, 0.0, -M_PI / 3.0);
    CHECK(reset_required_force(d) == doctest::Approx(9.80665).epsilon(1e-9));

    // |FF'| equal to l2 collapses to m g
    d.l2 = 0.1;
    CHECK(reset_required_force(d) == doctest::Approx(2.0 * kGravity).epsilon(1e-9));

    // cable angle at pi/2 is singular
    ResetSpringDesign singular = simple_reset(0.05, M_PI / 2.0 - 1e-9, -M_PI / 3.0);
    CHECK_THROWS_AS(reset_required_force(singular), ComputeError);
}

TEST_CASE("reset spring design over the plantar-flexion sweep") {
    const ResetSpringDesign d = default_reset();
    const double theta_pf = -0.345; // -19.77 deg
    const ResetDesignResult r = reset_spring_design(d, theta_pf);
    CHECK(r.k > 0.0);

    // neutral pose: no stretch, no torque
    const auto& neutral = r.profile.back();
    CHECK(neutral.theta == doctest::Approx(0.0));
    CHECK(neutral.deflection == doctest::Approx(0.0));
    CHECK(std::abs(neutral.torque.torque) < 1e-12);

    // torque magnitude is maximal at max plantar-flexion
    double max_mag = 0.0;
    for (const auto& pt : r.profile) max_mag = std::max(max_mag, std::abs(pt.torque.torque));
    CHECK(std::abs(r.profile.front().torque.torque) == doctest::Approx(max_mag));

    // restoring direction: drives dorsi-flexion (negative in the plantar-positive
    // convention) throughout the plantar-flexed range
    for (const auto& pt : r.profile) {
        if (pt.theta < -1e-6) CHECK(pt.torque.torque < 0.0);
    }

    // covers the gravity-restoring requirement from the potential-energy
    // differential: |tau(theta)| >= m g l2 sin|theta|
    for (const auto& pt : r.profile) {
        const double gravity_need = d.foot_mass * kGravity * d.l2 * std::sin(-pt.theta);
        CHECK(std::abs(pt.torque.torque) >= gravity_need - 1e-12);
    }

    // energy balance: spring work over the return covers the potential lift
    double work = 0.0;
    for (std::size_t i = 1; i < r.profile.size(); ++i) {
        const double dth = r.profile[i].theta - r.profile[i - 1].theta;
        work += 0.5 *
                (std::abs(r.profile[i].torque.torque) +
                 std::abs(r.profile[i - 1].torque.torque)) *
                dth;
    }
    const double lift = d.foot_mass * kGravity * d.l2 * (1.0 - std::cos(theta_pf));
    CHECK(work >= lift);
}

TEST_CASE("reset spring degenerate geometry is rejected") {
    // anchor placed so the spring length at max plantar-flexion matches the
    // neutral length: no stretch to work with
    ResetSpringDesign d;
    d.foot_mass = 1.0;
    d.l2 = 0.05;
    d.beta = 0.0;
    d.point_a = {0.0, 0.0};
    d.point_f = {0.1, 0.0};
    const double theta_pf = -0.5;
    // anchor past the swept attachment: the spring shortens toward max
    // plantar-flexion instead of stretching
    const PlanarVector f_end = rotate(d.point_f, theta_pf);
    d.point_d = {2.0 * f_end.x, 2.0 * f_end.y};
    CHECK_THROWS_WITH_AS(reset_spring_design(d, theta_pf), doctest::Contains("degenerate"),
                         ComputeError);
}

TEST_CASE("reset torque helper is slack at and above neutral") {
    const ResetSpringDesign d = default_reset();
    const double k = reset_spring_design(d, -0.345).k;
    CHECK(reset_torque(d, k, 0.0).torque == doctest::Approx(0.0));
    CHECK(reset_torque(d, k, 0.1).force.norm() == doctest::Approx(0.0));
    CHECK(std::abs(reset_torque(d, k, -0.2).torque) > 0.0);
}
