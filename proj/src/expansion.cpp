#include "lazlab/expansion.hpp"

#include <cmath>

namespace lazlab {

BasisTerms basis_terms(const Jet3& r, double c) {
    const double inv = 1.0 / r.value;
    const double c2 = 1.0 / (c * c);
    const double slope = r.d1 * inv;
    BasisTerms t;
    t.cubic = {c2 * std::pow(r.value, -2.0 / 3.0), r.d2 * inv, slope * slope};
    t.quartic = {c2 * std::pow(r.value, -5.0 / 3.0) * r.d1, r.d3 * inv, slope * r.d2 * inv,
                 slope * slope * slope};
    return t;
}

double weighted_sum(const CubicWeights& w, const CubicWeights& t) {
    return w[0] * t[0] + w[1] * t[1] + w[2] * t[2];
}

double weighted_sum(const QuarticWeights& w, const QuarticWeights& t) {
    return w[0] * t[0] + w[1] * t[1] + w[2] * t[2] + w[3] * t[3];
}

SCoefficients s_coefficients(const Jet3& r) {
    const double p = r.value;
    const double p1 = r.d1;
    const double p2 = r.d2;
    const double p3 = r.d3;
    SCoefficients k;
    k.alpha1 = 2.0 * p;
    k.alpha2 = 4.0 / 3.0 * p1 * p;
    k.alpha3 = 2.0 / 3.0 * p2 * p * p + 4.0 / 9.0 * p1 * p1 * p;
    k.alpha4 = 4.0 / 15.0 * p3 * p * p * p + 28.0 / 45.0 * p1 * p2 * p * p - 2.0 / 45.0 * p1 * p +
               16.0 / 135.0 * p1 * p1 * p1 * p;
    k.beta2 = -2.0 / 3.0 * p1;
    k.beta3 = -2.0 / 3.0 * p2 * p + 4.0 / 9.0 * p1 * p1;
    k.beta4 = -2.0 / 5.0 * p3 * p * p + 28.0 / 45.0 * p1 * p2 * p - 2.0 / 45.0 * p1 -
              44.0 / 135.0 * p1 * p1 * p1;
    return k;
}

SCoefficients s_coefficients(const BoundaryCurve& curve, double s) {
    return s_coefficients(eval_curvature(curve, s));
}

ABCoefficients ab_coefficients(const Jet3& r, double c) {
    const SCoefficients k = s_coefficients(r);
    const double p = r.value;
    const double p1 = r.d1;
    const double p2 = r.d2;
    const double p3 = r.d3;
    const double q = std::cbrt(p);  // r = rho^{1/3}
    const double m23 = 1.0 / (q * q);
    const double m53 = m23 / p;
    const double m83 = m53 / p;
    const double m113 = m83 / p;

    // l(s) = C int rho^{-2/3}
    const double l1 = c * m23;
    const double l2 = -2.0 / 3.0 * c * m53 * p1;
    const double l3 = c * (10.0 / 9.0 * m83 * p1 * p1 - 2.0 / 3.0 * m53 * p2);
    const double l4 = c * (-80.0 / 27.0 * m113 * p1 * p1 * p1 + 10.0 / 3.0 * m83 * p1 * p2 -
                           2.0 / 3.0 * m53 * p3);

    const double r1 = m23 * p1 / 3.0;
    const double r2 = m23 * p2 / 3.0 - 2.0 / 9.0 * m53 * p1 * p1;
    const double r3 = m23 * p3 / 3.0 - 2.0 / 3.0 * m53 * p1 * p2 + 10.0 / 27.0 * m83 * p1 * p1 * p1;

    const double a1 = k.alpha1;
    const double a2 = k.alpha2;
    const double a3 = k.alpha3;
    const double a4 = k.alpha4;
    const double b2 = k.beta2;
    const double b3 = k.beta3;
    const double b4 = k.beta4;

    ABCoefficients out;
    out.a[0] = a1 * l1;
    out.a[1] = a2 * l1 + 0.5 * a1 * a1 * l2;
    out.a[2] = a3 * l1 + a1 * a2 * l2 + a1 * a1 * a1 * l3 / 6.0;
    out.a[3] = a4 * l1 + 0.5 * l2 * (a2 * a2 + 2.0 * a1 * a3) + 0.5 * a1 * a1 * a2 * l3 +
               a1 * a1 * a1 * a1 * l4 / 24.0;

    out.b[0] = 2.0 * c * q;
    out.b[1] = 2.0 * c * a1 * r1 + 2.0 * c * b2 * q;
    out.b[2] = 2.0 * c * b3 * q - c * q / 12.0 + 2.0 * c * a1 * b2 * r1 + 2.0 * c * a2 * r1 +
               c * a1 * a1 * r2;
    out.b[3] = 2.0 * c * b4 * q - c / 4.0 * b2 * q + 2.0 * c * b3 * a1 * r1 - c / 12.0 * a1 * r1 +
               2.0 * c * b2 * a2 * r1 + c * a1 * a1 * b2 * r2 + 2.0 * c * a3 * r1 +
               2.0 * c * a1 * a2 * r2 + c / 3.0 * a1 * a1 * a1 * r3;
    return out;
}

ABCoefficients ab_coefficients(const BoundaryCurve& curve, double s) {
    return ab_coefficients(eval_curvature(curve, s), curve.lazutkin_constant());
}

LazutkinCoefficients lazutkin_coefficients_via_s(const BoundaryCurve& curve, double s) {
    const ABCoefficients ab = ab_coefficients(curve, s);
    const double a1 = ab.a[0];
    const double cube = a1 * a1 * a1;
    LazutkinCoefficients out;
    out.alpha3 = (24.0 * ab.a[2] + a1) / (24.0 * cube);
    out.alpha4 = ab.a[3] / (cube * a1);
    out.beta3 = (24.0 * ab.b[2] + ab.b[0]) / (24.0 * cube);
    out.beta4 = ab.b[3] / (cube * a1);
    return out;
}

Jet3 x_derivatives(const BoundaryCurve& curve, double x) {
    return curve.radius_x_at_angle(curve.angle_at_lazutkin_x(x));
}

LazutkinCoefficients lazutkin_coefficients(const BoundaryCurve& curve, double x,
                                           const CoefficientModel& model) {
    const BasisTerms t = basis_terms(x_derivatives(curve, x), curve.lazutkin_constant());
    LazutkinCoefficients out;
    out.alpha3 = weighted_sum(model.alpha3, t.cubic);
    out.alpha4 = weighted_sum(model.alpha4, t.quartic);
    out.beta4 = weighted_sum(model.beta4, t.quartic);
    out.alpha3_prime = weighted_sum(model.alpha3_prime(), t.quartic);
    return out;
}

}  // namespace lazlab
