#include "lazlab/lazutkin.hpp"

#include <cmath>
#include <sstream>

#include "lazlab/errors.hpp"

namespace lazlab {

LazutkinPoint LazutkinStep::wrapped() const {
    double w = x - std::floor(x);
    if (w >= 1.0) w = 0.0;
    return {w, y};
}

double lazutkin_y_bound(const BoundaryCurve& curve, double theta) {
    return 4.0 * curve.lazutkin_constant() * std::cbrt(curve.radius()(theta));
}

LazutkinPoint to_lazutkin(const BoundaryCurve& curve, const PhasePoint& p) {
    check_phase_point(p);
    const double theta = curve.tangent_angle(p.s);
    double x = curve.lazutkin_x_at_angle(theta);
    if (x >= 1.0) x -= 1.0;
    return {x, lazutkin_y_bound(curve, theta) * std::sin(0.5 * p.phi)};
}

namespace {

double phi_from_y(const BoundaryCurve& curve, double theta, double y) {
    const double bound = lazutkin_y_bound(curve, theta);
    if (!(y > 0.0 && y < bound) || !std::isfinite(y)) {
        std::ostringstream os;
        os << "lazutkin point: y = " << y << " outside the admissible range (0, " << bound << ")";
        throw InvalidState(os.str());
    }
    return 2.0 * std::asin(y / bound);
}

}  // namespace

PhasePoint from_lazutkin(const BoundaryCurve& curve, const LazutkinPoint& q) {
    if (!std::isfinite(q.x)) throw InvalidState("lazutkin point: x is not finite");
    const double theta = curve.angle_at_lazutkin_x(q.x);
    const double phi = phi_from_y(curve, theta, q.y);
    return {curve.reduce(curve.arc_length(theta)), phi};
}

LazutkinStep lazutkin_step_from_angle(const BoundaryCurve& curve, double theta, double x,
                                      double y) {
    const double phi = phi_from_y(curve, theta, y);
    const Impact hit = advance_from_angle(curve, theta, phi);
    const double theta1 = theta + hit.delta_theta;
    LazutkinStep out;
    out.advance = curve.lazutkin_constant() * curve.radius_cbrt().increment(theta, hit.delta_theta);
    out.x = x + out.advance;
    out.y = lazutkin_y_bound(curve, theta1) * std::sin(0.5 * hit.phi1);
    return out;
}

LazutkinStep lazutkin_step(const BoundaryCurve& curve, const LazutkinPoint& q) {
    if (!std::isfinite(q.x)) throw InvalidState("lazutkin point: x is not finite");
    return lazutkin_step_from_angle(curve, curve.angle_at_lazutkin_x(q.x), q.x, q.y);
}

}  // namespace lazlab
