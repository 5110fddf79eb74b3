#include <cmath>
#include <numbers>

#include "doctest.h"
#include "domains.hpp"
#include "lazlab/errors.hpp"
#include "lazlab/geometry.hpp"
#include "oracles.hpp"

using namespace lazlab;
using std::numbers::pi;

TEST_CASE("unit circle has perimeter 2 pi and C = 1/(2 pi)") {
    const BoundaryCurve c = build_domain(testdomains::circle());
    CHECK(c.perimeter() == doctest::Approx(2 * pi).epsilon(1e-15));
    CHECK(c.lazutkin_constant() == doctest::Approx(1 / (2 * pi)).epsilon(1e-14));
    const Jet3 k = eval_curvature(c, 1.234);
    CHECK(k.value == doctest::Approx(1.0));
    CHECK(std::abs(k.d1) < 1e-15);
    CHECK(std::abs(k.d2) < 1e-15);
    CHECK(std::abs(k.d3) < 1e-15);
}

TEST_CASE("cos 2 theta perturbation keeps perimeter and closes") {
    const BoundaryCurve c = build_domain(testdomains::oval(0.3));
    CHECK(c.perimeter() == doctest::Approx(2 * pi).epsilon(1e-15));
    CHECK(c.closure_error() < 1e-12 * c.perimeter());
}

TEST_CASE("invalid specs are rejected with the violated invariant") {
    SUBCASE("non-positive radius") {
        const FourierCurvatureSpec bad{"bad", 1.0, {{2, 1.2, 0.0}}};
        try {
            bad.validate();
            FAIL("expected InvalidSpec");
        } catch (const InvalidSpec& e) {
            const std::string msg = e.what();
            CHECK(msg.find("not positive") != std::string::npos);
            CHECK(msg.find("rho(1.5708) = -0.2") != std::string::npos);
        }
    }
    SUBCASE("n = 1 harmonic") {
        const FourierCurvatureSpec bad{"bad", 1.0, {{1, 0.1, 0.0}}};
        CHECK_THROWS_AS(build_domain(bad), InvalidSpec);
    }
    SUBCASE("non-positive c0") { CHECK_THROWS_AS(build_domain({"bad", 0.0, {}}), InvalidSpec); }
    SUBCASE("non-finite coefficient") {
        CHECK_THROWS_AS(build_domain({"bad", 1.0, {{3, NAN, 0.0}}}), InvalidSpec);
    }
    SUBCASE("duplicate harmonic") {
        CHECK_THROWS_AS(build_domain({"bad", 1.0, {{3, 0.1, 0.0}, {3, 0.0, 0.1}}}), InvalidSpec);
    }
}

TEST_CASE("curve invariants on several domains") {
    for (const auto& spec :
         {testdomains::oval(0.3), testdomains::lopsided(), testdomains::wobble()}) {
        CAPTURE(spec.name);
        const BoundaryCurve c(spec);
        CHECK(c.closure_error() < 1e-12 * c.perimeter());
        CHECK(c.arc_length(0.0) == 0.0);
        CHECK(c.arc_length(2 * pi) == doctest::Approx(c.perimeter()).epsilon(1e-15));

        // Total turning: int ds / rho = 2 pi, done in s by quadrature.
        const double turning = oracle::quad(
            [&](double s) { return 1.0 / eval_curvature(c, s).value; }, 0.0, c.perimeter());
        CHECK(std::abs(turning - 2 * pi) < 1e-10);

        // Normalization of C against an independent quadrature.
        const double integral = oracle::cbrt_integral(spec, 2 * pi);
        CHECK(std::abs(c.lazutkin_constant() * integral - 1.0) < 1e-12);

        for (double theta : {0.3, 1.7, 4.1, 6.0}) {
            const Eigen::Vector2d p = c.position_at_angle(theta);
            const Eigen::Vector2d q = oracle::position(spec, theta);
            CHECK((p - q).norm() < 1e-12);
            CHECK(std::abs(c.lazutkin_x_at_angle(theta) -
                           c.lazutkin_constant() * oracle::cbrt_integral(spec, theta)) < 1e-13);
        }
    }
}

TEST_CASE("tangent angle inverts arc length") {
    const BoundaryCurve c(testdomains::lopsided());
    for (int k = 0; k < 50; ++k) {
        const double s = c.perimeter() * (k + 0.5) / 50;
        const double theta = c.tangent_angle(s);
        CHECK(std::abs(c.arc_length(theta) - s) < 1e-13);
    }
    CHECK(std::abs(c.tangent_angle(c.perimeter())) < 1e-14);
    CHECK(c.tangent_angle(-0.25 * c.perimeter()) ==
          doctest::Approx(c.tangent_angle(0.75 * c.perimeter())).epsilon(1e-14));
}

TEST_CASE("eval_point: circle landmarks and closure") {
    const BoundaryCurve circle(testdomains::circle());
    BoundaryPoint p = eval_point(circle, 0.0);
    CHECK(std::abs(p.tangent_angle) < 1e-14);
    CHECK(p.position.norm() < 1e-15);
    p = eval_point(circle, pi / 2);
    CHECK(p.tangent_angle == doctest::Approx(pi / 2).epsilon(1e-14));
    // Quarter arc from (0,0) on a unit circle centred at (0,1).
    CHECK(p.position.x() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p.position.y() == doctest::Approx(1.0).epsilon(1e-14));

    const BoundaryCurve oval(testdomains::oval(0.3));
    const Eigen::Vector2d start = oval.position_at_angle(0.0);
    const Eigen::Vector2d end = oval.position_at_angle(2 * pi);
    CHECK((end - start).norm() < 1e-12);
    CHECK((eval_point(oval, oval.perimeter()).position - start).norm() < 1e-12);
}

TEST_CASE("unit speed") {
    const BoundaryCurve c(testdomains::lopsided());
    const double h = 1e-6;
    for (double s : {0.1, 1.0, 2.5, 5.9}) {
        const double speed = (eval_point(c, s + h).position - eval_point(c, s).position).norm() / h;
        CHECK(std::abs(speed - 1.0) < 1e-5);
    }
}

TEST_CASE("curvature derivatives in s match finite differences") {
    const BoundaryCurve oval(testdomains::oval(0.3));
    // theta(s) = 0: rho = 1.3 and the slope vanishes by symmetry.
    const Jet3 at0 = eval_curvature(oval, 0.0);
    CHECK(at0.value == doctest::Approx(1.3).epsilon(1e-15));
    CHECK(std::abs(at0.d1) < 1e-15);

    for (const auto& spec : {testdomains::oval(0.3), testdomains::lopsided()}) {
        const BoundaryCurve c(spec);
        const auto rho_of_s = [&](double s) { return eval_curvature(c, s).value; };
        for (double s : {0.4, 1.9, 3.3, 5.2}) {
            const Jet3 j = eval_curvature(c, s);
            const auto fd = oracle::finite_differences(rho_of_s, s, 1e-3);
            CHECK(std::abs(j.d1 - fd[0]) < 1e-6);
            CHECK(std::abs(j.d2 - fd[1]) < 1e-5);
            CHECK(std::abs(j.d3 - fd[2]) < 1e-4);
        }
    }
}

TEST_CASE("spec transforms") {
    const FourierCurvatureSpec spec = testdomains::lopsided();
    const BoundaryCurve base(spec);
    const BoundaryCurve big(spec.scaled(2.0));
    CHECK(big.perimeter() == doctest::Approx(2 * base.perimeter()));
    CHECK(big.lazutkin_constant() ==
          doctest::Approx(base.lazutkin_constant() / std::cbrt(2.0)).epsilon(1e-13));

    const double theta0 = 0.8;
    const BoundaryCurve rot(spec.rotated(theta0));
    CHECK(rot.radius()(0.3) == doctest::Approx(base.radius()(theta0 + 0.3)).epsilon(1e-14));

    const BoundaryCurve refl(spec.reflected());
    CHECK(refl.radius()(0.3) == doctest::Approx(base.radius()(-0.3)).epsilon(1e-14));
}
