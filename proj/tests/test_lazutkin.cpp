#include <cmath>
#include <numbers>

#include "doctest.h"
#include "domains.hpp"
#include "lazlab/errors.hpp"
#include "lazlab/lazutkin.hpp"

using namespace lazlab;
using std::numbers::pi;

TEST_CASE("circle: Lazutkin coordinates in closed form") {
    const BoundaryCurve c(testdomains::circle());
    LazutkinPoint q = to_lazutkin(c, {0.0, pi / 2});
    CHECK(std::abs(q.x) < 1e-15);
    CHECK(q.y == doctest::Approx(std::sqrt(2.0) / pi).epsilon(1e-14));
    CHECK(q.y == doctest::Approx(0.450158158).epsilon(1e-9));

    q = to_lazutkin(c, {pi, 1.0});
    CHECK(q.x == doctest::Approx(0.5).epsilon(1e-14));

    // x1 = x + (2/pi) asin(pi y / 2), y1 = y.
    for (double y : {0.01, 0.1, 0.3, 0.6}) {
        const LazutkinStep st = lazutkin_step(c, {0.2, y});
        CHECK(st.advance == doctest::Approx(2 / pi * std::asin(pi * y / 2)).epsilon(1e-12));
        CHECK(st.x == doctest::Approx(0.2 + st.advance).epsilon(1e-13));
        CHECK(st.y == doctest::Approx(y).epsilon(1e-12));
    }
}

TEST_CASE("round trip through Lazutkin coordinates") {
    for (const auto& spec : {testdomains::oval(0.3), testdomains::lopsided()}) {
        const BoundaryCurve c(spec);
        for (double s : {0.0, 0.7, 3.1, 6.0}) {
            for (double phi : {1e-6, 0.01, 0.5, 2.0, 3.1}) {
                const PhasePoint p{s, phi};
                const PhasePoint back = from_lazutkin(c, to_lazutkin(c, p));
                CHECK(std::abs(std::remainder(back.s - s, c.perimeter())) < 1e-12);
                CHECK(std::abs(back.phi - phi) < 1e-12 * std::max(1.0, phi));
            }
        }
        const LazutkinPoint q = to_lazutkin(c, {1.0, 0.3});
        const LazutkinPoint r = to_lazutkin(c, from_lazutkin(c, q));
        CHECK(std::abs(r.x - q.x) < 1e-12);
        CHECK(std::abs(r.y - q.y) < 1e-12);
    }
}

TEST_CASE("from_lazutkin rejects points outside the image") {
    const BoundaryCurve c(testdomains::oval(0.3));
    const double bound = lazutkin_y_bound(c, 0.0);
    CHECK_THROWS_AS(from_lazutkin(c, {0.0, 0.0}), InvalidState);
    CHECK_THROWS_AS(from_lazutkin(c, {0.0, -0.1}), InvalidState);
    CHECK_THROWS_AS(from_lazutkin(c, {0.0, bound * 1.01}), InvalidState);
    CHECK_NOTHROW(from_lazutkin(c, {0.0, bound * 0.99}));
}

TEST_CASE("Lazutkin coordinates are invariant under homothety") {
    const FourierCurvatureSpec spec = testdomains::lopsided();
    const BoundaryCurve a(spec);
    const BoundaryCurve b(spec.scaled(3.5));
    for (double s : {0.4, 2.2, 5.0}) {
        for (double phi : {0.01, 0.8}) {
            const LazutkinPoint qa = to_lazutkin(a, {s, phi});
            const LazutkinPoint qb = to_lazutkin(b, {3.5 * s, phi});
            CHECK(std::abs(qa.x - qb.x) < 1e-10);
            CHECK(std::abs(qa.y - qb.y) < 1e-10);
            const LazutkinStep sa = lazutkin_step(a, qa);
            const LazutkinStep sb = lazutkin_step(b, qb);
            CHECK(std::abs(sa.x - sb.x) < 1e-10);
            CHECK(std::abs(sa.y - sb.y) < 1e-10);
        }
    }
}

TEST_CASE("twist: the advance grows with y") {
    const BoundaryCurve c(testdomains::wobble());
    double prev = 0.0;
    for (int k = 1; k <= 20; ++k) {
        const double y = 0.01 * k;
        const LazutkinStep st = lazutkin_step(c, {0.31, y});
        CHECK(st.advance > prev);
        prev = st.advance;
        // Leading order: x1 = x + y.
        if (k <= 3) CHECK(std::abs(st.advance / y - 1.0) < 0.05);
    }
}

TEST_CASE("wrapped step lands in [0, 1)") {
    const BoundaryCurve c(testdomains::oval(0.3));
    const LazutkinStep st = lazutkin_step(c, {0.95, 0.2});
    CHECK(st.x > 1.0);
    const LazutkinPoint w = st.wrapped();
    CHECK(w.x >= 0.0);
    CHECK(w.x < 1.0);
    CHECK(w.x == doctest::Approx(st.x - 1.0));
}
