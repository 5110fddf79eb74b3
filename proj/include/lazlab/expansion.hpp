#pragma once

#include <array>

#include "lazlab/geometry.hpp"

namespace lazlab {

/// Coefficients of the billiard map near the boundary in (s, phi):
///   s1   = s + alpha1 phi + alpha2 phi^2 + alpha3 phi^3 + alpha4 phi^4 + O(phi^5)
///   phi1 = phi + beta2 phi^2 + beta3 phi^3 + beta4 phi^4 + O(phi^5)
struct SCoefficients {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double alpha3 = 0.0;
    double alpha4 = 0.0;
    double beta2 = 0.0;
    double beta3 = 0.0;
    double beta4 = 0.0;
};

/// Taylor coefficients in phi of x1 - x = l(s1) - l(s) (a1..a4) and of
/// y1 = 4 C rho^{1/3}(s1) sin(phi1 / 2) (b1..b4).
struct ABCoefficients {
    std::array<double, 4> a{};
    std::array<double, 4> b{};
};

/// Coefficients of T^L:
///   x1 = x + y + alpha3 y^3 + alpha4 y^4 + O(y^5),  y1 = y + beta4 y^4 + O(y^5).
struct LazutkinCoefficients {
    double alpha3 = 0.0;
    double alpha4 = 0.0;
    double beta4 = 0.0;
    double alpha3_prime = 0.0;
    /// y^3 coefficient of y1; identically zero, kept for the cross-check route.
    double beta3 = 0.0;
};

/// Weights of alpha3 on (C^-2 rho^{-2/3}, rho^-1 rho'', rho^-2 rho'^2), all
/// derivatives in x.
using CubicWeights = std::array<double, 3>;

/// Weights of a fourth-order coefficient on
///   t1 = C^-2 rho^{-5/3} rho',  t2 = rho^-1 rho''',
///   t3 = rho^-2 rho' rho'',     t4 = rho^-3 rho'^3.
using QuarticWeights = std::array<double, 4>;

/// Weights of alpha3' obtained by differentiating each alpha3 basis term in x.
constexpr QuarticWeights derivative_weights(const CubicWeights& w) {
    return {-2.0 / 3.0 * w[0], w[1], -w[1] + 2.0 * w[2], -2.0 * w[2]};
}

/// Linear model of the Lazutkin coefficients over the basis terms.
struct CoefficientModel {
    CubicWeights alpha3{};
    QuarticWeights alpha4{};
    QuarticWeights beta4{};

    constexpr QuarticWeights alpha3_prime() const { return derivative_weights(alpha3); }

    /// Weights obtained by series reversion of the chord condition and
    /// confirmed against fits of the simulated map (see validate_weights).
    static constexpr CoefficientModel validated();
    /// Values as they appear in the literature. Their t3/t4 weights (and the
    /// alpha3 slope weight) disagree with the simulated map.
    static constexpr CoefficientModel literature();
};

constexpr CoefficientModel CoefficientModel::validated() {
    return {{1.0 / 96.0, -1.0 / 36.0, 1.0 / 27.0},
            {-1.0 / 360.0, -1.0 / 90.0, 11.0 / 270.0, -4.0 / 135.0},
            {1.0 / 720.0, 1.0 / 180.0, -11.0 / 540.0, 2.0 / 135.0}};
}

constexpr CoefficientModel CoefficientModel::literature() {
    return {{1.0 / 96.0, -1.0 / 36.0, 4.0 / 27.0},
            {-1.0 / 360.0, -1.0 / 90.0, 29.0 / 270.0, -4.0 / 27.0},
            {1.0 / 720.0, 1.0 / 180.0, -119.0 / 540.0, 5.0 / 27.0}};
}

/// alpha3' as given alongside the literature coefficients; it is the exact
/// derivative of the literature alpha3.
inline constexpr QuarticWeights kLiteratureAlpha3Prime{-1.0 / 144.0, -1.0 / 36.0, 35.0 / 108.0,
                                                        -8.0 / 27.0};

/// Basis terms evaluated at one point.
struct BasisTerms {
    CubicWeights cubic{};      // C^-2 rho^{-2/3}, rho^-1 rho'', rho^-2 rho'^2
    QuarticWeights quartic{};  // t1..t4
};

BasisTerms basis_terms(const Jet3& rho_x, double lazutkin_c);

double weighted_sum(const CubicWeights& w, const CubicWeights& terms);
double weighted_sum(const QuarticWeights& w, const QuarticWeights& terms);

SCoefficients s_coefficients(const Jet3& rho_s);
SCoefficients s_coefficients(const BoundaryCurve& curve, double s);

ABCoefficients ab_coefficients(const Jet3& rho_s, double lazutkin_c);
ABCoefficients ab_coefficients(const BoundaryCurve& curve, double s);

/// Lazutkin coefficients through A/B and phi = 2 arcsin(y / (2 A1)); the
/// alpha3_prime field is left at zero.
LazutkinCoefficients lazutkin_coefficients_via_s(const BoundaryCurve& curve, double s);

/// (rho, rho'(x), rho''(x), rho'''(x)).
Jet3 x_derivatives(const BoundaryCurve& curve, double x);

LazutkinCoefficients lazutkin_coefficients(
    const BoundaryCurve& curve, double x,
    const CoefficientModel& model = CoefficientModel::validated());

}  // namespace lazlab
