#include "lazlab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "lazlab/errors.hpp"

namespace lazlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kScanSamples = 64;
constexpr int kMaxIterations = 200;

}  // namespace

void check_phase_point(const PhasePoint& p) {
    if (!std::isfinite(p.s)) throw InvalidState("phase point: s is not finite");
    if (!(p.phi > 0.0 && p.phi < std::numbers::pi)) {
        std::ostringstream os;
        os << "phase point: phi = " << p.phi << " outside (0, pi)";
        throw InvalidState(os.str());
    }
    if (p.phi < kGrazingFloor) {
        std::ostringstream os;
        os << "phase point: phi = " << p.phi << " below the grazing floor " << kGrazingFloor;
        throw InvalidState(os.str());
    }
}

Impact advance_from_angle(const BoundaryCurve& curve, double theta, double phi) {
    check_phase_point({0.0, phi});

    // Angle of the chord to the candidate impact theta + delta, measured from
    // the tangent at theta. Strict convexity makes it increase from 0 to pi.
    const auto chord_angle = [&](double delta) {
        const Eigen::Vector2d c = curve.chord(theta, delta);
        return std::atan2(c.y(), c.x());
    };

    double lo = 0.0;
    double hi = kTwoPi;
    for (int k = 1; k < kScanSamples; ++k) {
        const double d = kTwoPi * k / kScanSamples;
        if (chord_angle(d) >= phi) {
            hi = d;
            break;
        }
        lo = d;
    }

    const TrigSeries& rho = curve.radius();
    double delta = std::clamp(2.0 * phi, lo, hi);
    if (delta <= lo || delta >= hi) delta = 0.5 * (lo + hi);
    int it = 0;
    for (; it < kMaxIterations; ++it) {
        const Eigen::Vector2d c = curve.chord(theta, delta);
        const double g = std::atan2(c.y(), c.x()) - phi;
        if (g > 0.0) hi = delta;
        else lo = delta;
        // d/d delta of the chord angle: cross(chord, chord') / |chord|^2.
        const double r = rho(theta + delta);
        const double dg = r * (c.x() * std::sin(delta) - c.y() * std::cos(delta)) / c.squaredNorm();
        double next = delta - g / dg;
        if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
        const double step = std::abs(next - delta);
        delta = next;
        if (step <= 1e-15 * std::max(1.0, delta) || hi - lo <= 1e-15 * delta) break;
    }
    if (it == kMaxIterations) {
        std::ostringstream os;
        os.precision(17);
        os << "billiard_step: next-impact solve did not converge (theta = " << theta
           << ", phi = " << phi << ", bracket [" << lo << ", " << hi << "])";
        throw NumericalError(os.str());
    }

    const Eigen::Vector2d c = curve.chord(theta, delta);
    const double angle = std::atan2(c.y(), c.x());
    Impact out;
    out.delta_theta = delta;
    out.delta_s = rho.increment(theta, delta);
    out.phi1 = delta - angle;
    out.residual = std::cos(phi) * c.y() - std::sin(phi) * c.x();
    out.iterations = it + 1;
    return out;
}

PhasePoint billiard_step(const BoundaryCurve& curve, const PhasePoint& p) {
    check_phase_point(p);
    const double s = curve.reduce(p.s);
    const Impact hit = advance_from_angle(curve, curve.tangent_angle(s), p.phi);
    return {curve.reduce(s + hit.delta_s), hit.phi1};
}

std::vector<PhasePoint> orbit(const BoundaryCurve& curve, const PhasePoint& seed, std::size_t n) {
    std::vector<PhasePoint> out;
    out.reserve(n);
    PhasePoint p = seed;
    for (std::size_t i = 0; i < n; ++i) {
        try {
            p = billiard_step(curve, p);
            out.push_back(p);
        } catch (const Error& e) {
            const std::string msg = "orbit step " + std::to_string(i) + ": " + e.what();
            if (e.kind() == "numerical") throw NumericalError(msg);
            throw InvalidState(msg);
        }
    }
    return out;
}

}  // namespace lazlab
