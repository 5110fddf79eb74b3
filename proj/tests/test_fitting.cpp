#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "domains.hpp"
#include "lazlab/errors.hpp"
#include "lazlab/fitting.hpp"

using namespace lazlab;
using std::numbers::pi;

TEST_CASE("circle: fitted alpha3 is pi^2 / 24") {
    const BoundaryCurve c(testdomains::circle());
    const FittedCoeffs f = fit_map_coefficients(c, 0.0);
    CHECK(f.reliable);
    CHECK(f.alpha3 == doctest::Approx(pi * pi / 24).epsilon(1e-7));
    CHECK(std::abs(f.alpha4) < 1e-5);
    CHECK(std::abs(f.beta4) < 1e-5);
    CHECK(std::abs(f.beta3_drift) < 1e-8);
}

TEST_CASE("fit matches the closed-form coefficients") {
    const BoundaryCurve c(testdomains::oval(0.3));
    for (double x : {0.0, 0.2, 0.55}) {
        const FittedCoeffs f = fit_map_coefficients(c, x);
        const LazutkinCoefficients k = lazutkin_coefficients(c, x);
        CHECK(f.reliable);
        CHECK(std::abs(f.alpha3 - k.alpha3) < 1e-6 * std::max(1.0, std::abs(k.alpha3)));
        CHECK(std::abs(f.alpha4 - k.alpha4) < 1e-4 * std::max(1.0, std::abs(k.alpha4)));
        CHECK(std::abs(f.beta4 - k.beta4) < 1e-4 * std::max(1.0, std::abs(k.beta4)));
        CHECK(std::abs(f.beta3_drift) < 1e-6);
    }
}

TEST_CASE("fit is stable across ladders") {
    const BoundaryCurve c(testdomains::lopsided());
    FitConfig a;
    FitConfig b;
    b.y_max = 0.015;
    b.n_samples = 24;
    b.ratio = 0.85;
    const FittedCoeffs fa = fit_map_coefficients(c, 0.4, a);
    const FittedCoeffs fb = fit_map_coefficients(c, 0.4, b);
    CHECK(std::abs(fa.alpha3 - fb.alpha3) < 1e-6 * std::max(1.0, std::abs(fa.alpha3)));
    CHECK(std::abs(fa.alpha4 - fb.alpha4) < 1e-3 * std::max(1.0, std::abs(fa.alpha4)));
}

TEST_CASE("fit configuration preconditions") {
    const BoundaryCurve c(testdomains::oval(0.3));
    FitConfig cfg;
    cfg.n_samples = 3;
    CHECK_THROWS_AS(fit_map_coefficients(c, 0.0, cfg), PreconditionError);
    cfg = {};
    cfg.fit_degree = 30;
    CHECK_THROWS_AS(cfg.validate(), PreconditionError);
    cfg = {};
    cfg.ratio = 1.2;
    CHECK_THROWS_AS(cfg.validate(), PreconditionError);
    cfg = {};
    cfg.y_max = 5.0;
    CHECK_THROWS_AS(fit_map_coefficients(c, 0.0, cfg), PreconditionError);
}

TEST_CASE("profile grid size below 8 is rejected") {
    const BoundaryCurve c(testdomains::oval(0.3));
    CHECK_THROWS_AS(coefficient_profile(c, 4, {}, CoeffSource::closed), PreconditionError);
    CHECK_THROWS_AS(coefficient_profile(c, 4, {}, CoeffSource::fitted), PreconditionError);
}

TEST_CASE("closed and fitted profiles agree") {
    const BoundaryCurve c(testdomains::oval(0.3));
    const CoeffProfile closed = coefficient_profile(c, 16, {}, CoeffSource::closed);
    const CoeffProfile fitted = coefficient_profile(c, 16, {}, CoeffSource::fitted);
    REQUIRE(closed.size() == 16);
    REQUIRE(fitted.size() == 16);
    CHECK(fitted.complete());
    CHECK(fitted.fits.size() == 16);
    CHECK(closed.alpha3_prime.has_value());
    for (std::size_t i = 0; i < 16; ++i) {
        CHECK(closed.x[i] == doctest::Approx(i / 16.0));
        CHECK(fitted.x[i] == closed.x[i]);
        CHECK(std::abs(fitted.alpha3[i] - closed.alpha3[i]) < 1e-6);
    }
}

TEST_CASE("spectral derivative of the alpha3 column") {
    const BoundaryCurve c(testdomains::lopsided());
    const CoeffProfile closed = coefficient_profile(c, 256, {}, CoeffSource::closed);
    CoeffProfile stripped = closed;
    stripped.alpha3_prime.reset();
    const CoeffProfile d = differentiate_profile(stripped);
    REQUIRE(d.alpha3_prime.has_value());
    for (std::size_t i = 0; i < d.size(); ++i)
        CHECK(std::abs((*d.alpha3_prime)[i] - (*closed.alpha3_prime)[i]) < 1e-8);

    CoeffProfile uneven = stripped;
    uneven.x[3] += 1e-3;
    CHECK_THROWS_AS(differentiate_profile(uneven), PreconditionError);
}

TEST_CASE("weights recovered from fitted maps") {
    const std::vector<BoundaryCurve> curves{BoundaryCurve(testdomains::oval(0.3)),
                                            BoundaryCurve(testdomains::lopsided()),
                                            BoundaryCurve(testdomains::wobble())};
    const WeightFit w = validate_weights(curves, 12);
    CHECK(w.rows == 36);
    CHECK(max_weight_gap(w.model, CoefficientModel::validated()) < 1e-4);
    CHECK(max_weight_gap(w.model, CoefficientModel::literature()) > 1e-2);
    CHECK(w.residual_alpha3 < 1e-5);
    CHECK(w.residual_alpha4 < 1e-3);
    CHECK(w.residual_beta4 < 1e-3);

    CHECK_THROWS_AS(validate_weights(std::span(curves).first(2), 12), PreconditionError);
    CHECK_THROWS_AS(validate_weights(curves, 4), PreconditionError);
}
