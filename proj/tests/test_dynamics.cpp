#include <cmath>
#include <numbers>

#include "doctest.h"
#include "domains.hpp"
#include "lazlab/dynamics.hpp"
#include "lazlab/errors.hpp"
#include "oracles.hpp"

using namespace lazlab;
using std::numbers::pi;

namespace {

double wrap_diff(double a, double b, double period) { return std::remainder(a - b, period); }

}  // namespace

TEST_CASE("circle: chord of angle phi subtends 2 phi") {
    const BoundaryCurve c(testdomains::circle());
    PhasePoint p = billiard_step(c, {0.0, pi / 3});
    CHECK(p.s == doctest::Approx(2 * pi / 3).epsilon(1e-13));
    CHECK(p.phi == doctest::Approx(pi / 3).epsilon(1e-13));

    p = billiard_step(c, {0.0, pi / 2});
    CHECK(p.s == doctest::Approx(pi).epsilon(1e-13));
    CHECK(p.phi == doctest::Approx(pi / 2).epsilon(1e-13));

    for (double phi : {0.01, 0.4, 1.1, 2.0, 3.0}) {
        const PhasePoint q = billiard_step(c, {1.0, phi});
        CHECK(std::abs(wrap_diff(q.s, 1.0 + 2 * phi, 2 * pi)) < 1e-12);
        CHECK(std::abs(q.phi - phi) < 1e-12);
    }
}

TEST_CASE("circle: period-3 orbit returns to the seed") {
    const BoundaryCurve c(testdomains::circle());
    const auto pts = orbit(c, {0.0, pi / 3}, 3);
    REQUIRE(pts.size() == 3);
    CHECK(std::abs(wrap_diff(pts[2].s, 0.0, 2 * pi)) < 1e-12);
    CHECK(pts[2].phi == doctest::Approx(pi / 3).epsilon(1e-12));
}

TEST_CASE("oval: diameter along the minor axis is a 2-periodic orbit") {
    // rho = 1 + eps cos 2 theta is symmetric, so the normal at theta = 0 hits
    // theta = pi perpendicularly.
    const BoundaryCurve c(testdomains::oval(0.3));
    const PhasePoint p = billiard_step(c, {0.0, pi / 2});
    CHECK(p.s == doctest::Approx(0.5 * c.perimeter()).epsilon(1e-12));
    CHECK(p.phi == doctest::Approx(pi / 2).epsilon(1e-12));
}

TEST_CASE("step agrees with the quadrature oracle") {
    for (const auto& spec : {testdomains::oval(0.3), testdomains::lopsided(), testdomains::wobble()}) {
        CAPTURE(spec.name);
        const BoundaryCurve c(spec);
        for (double theta : {0.2, 2.3, 4.4}) {
            for (double phi : {0.05, 0.7, 1.6, 2.6}) {
                CAPTURE(theta);
                CAPTURE(phi);
                const Impact imp = advance_from_angle(c, theta, phi);
                const auto [t1, phi1] = oracle::billiard_step_by_quadrature(spec, theta, phi);
                CHECK(std::abs(wrap_diff(theta + imp.delta_theta, t1, 2 * pi)) < 1e-11);
                CHECK(std::abs(imp.phi1 - phi1) < 1e-11);
                CHECK(std::abs(imp.residual) < 1e-12);
            }
        }
    }
}

TEST_CASE("time reversal") {
    const BoundaryCurve c(testdomains::lopsided());
    const double L = c.perimeter();
    for (double s : {0.3, 2.9, 5.5}) {
        for (double phi : {0.02, 0.9, 2.2}) {
            const PhasePoint q = billiard_step(c, {s, phi});
            const PhasePoint back = billiard_step(c, {q.s, pi - q.phi});
            CHECK(std::abs(wrap_diff(back.s, s, L)) < 1e-11);
            CHECK(std::abs(back.phi - (pi - phi)) < 1e-11);
        }
    }
}

TEST_CASE("near grazing the arc advance is 2 rho phi to leading order") {
    const BoundaryCurve c(testdomains::lopsided());
    const double s = 1.7;
    const double rho = eval_curvature(c, s).value;
    for (double phi : {1e-3, 1e-4, 1e-5}) {
        const PhasePoint q = billiard_step(c, {s, phi});
        const double ds = wrap_diff(q.s, s, c.perimeter());
        CHECK(std::abs(ds / (2 * rho * phi) - 1.0) < 2 * phi);
        CHECK(std::abs(q.phi / phi - 1.0) < 2 * phi);
    }
    // Just above the floor the solver still resolves the chord.
    const PhasePoint q = billiard_step(c, {s, 2 * kGrazingFloor});
    CHECK(q.phi > 0.0);
    CHECK(std::abs(wrap_diff(q.s, s, c.perimeter()) / (4 * rho * kGrazingFloor) - 1.0) < 1e-6);
}

TEST_CASE("phase-space domain checks") {
    const BoundaryCurve c(testdomains::oval(0.3));
    CHECK_THROWS_AS(billiard_step(c, {0.0, 0.0}), InvalidState);
    CHECK_THROWS_AS(billiard_step(c, {0.0, 1e-9}), InvalidState);
    CHECK_THROWS_AS(billiard_step(c, {0.0, pi}), InvalidState);
    CHECK_THROWS_AS(billiard_step(c, {0.0, -0.5}), InvalidState);
    CHECK_THROWS_AS(billiard_step(c, {NAN, 0.5}), InvalidState);
    CHECK_NOTHROW(billiard_step(c, {-1.0, 0.5}));
    CHECK_NOTHROW(billiard_step(c, {100.0, 0.5}));
}

TEST_CASE("orbit stays in phase space") {
    const BoundaryCurve c(testdomains::wobble());
    const auto pts = orbit(c, {0.1, 0.3}, 200);
    REQUIRE(pts.size() == 200);
    for (const PhasePoint& p : pts) {
        CHECK(p.s >= 0.0);
        CHECK(p.s < c.perimeter());
        CHECK(p.phi > 0.0);
        CHECK(p.phi < pi);
    }
    CHECK(orbit(c, {0.1, 0.3}, 0).empty());
}
