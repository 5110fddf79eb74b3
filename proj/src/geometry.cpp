#include "lazlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "lazlab/errors.hpp"

namespace lazlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

// Safeguarded Newton for a strictly increasing f on [lo, hi] with
// f(lo) <= target <= f(hi).
template <class F, class DF>
double monotone_solve(F f, DF df, double target, double lo, double hi, double guess, double tol,
                      const char* what) {
    double t = std::clamp(guess, lo, hi);
    for (int it = 0; it < 200; ++it) {
        const double r = f(t) - target;
        if (r > 0.0) hi = t;
        else lo = t;
        const double d = df(t);
        double next = t - r / d;
        if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
        if (std::abs(next - t) <= tol || hi - lo <= tol) return next;
        t = next;
    }
    throw NumericalError(std::string(what) + ": inversion did not converge");
}

}  // namespace

void FourierCurvatureSpec::validate() const {
    if (!std::isfinite(c0) || c0 <= 0.0) {
        throw InvalidSpec("spec '" + name + "': c0 must be a positive finite number, got " + fmt(c0));
    }
    std::set<int> seen;
    int max_n = 0;
    for (const auto& h : harmonics) {
        if (h.n == 1) {
            throw InvalidSpec("spec '" + name +
                              "': harmonic n = 1 present; the boundary would not close");
        }
        if (h.n < 2) {
            throw InvalidSpec("spec '" + name + "': harmonic order must be >= 2, got " +
                              std::to_string(h.n));
        }
        if (!std::isfinite(h.a) || !std::isfinite(h.b)) {
            throw InvalidSpec("spec '" + name + "': non-finite coefficient for n = " +
                              std::to_string(h.n));
        }
        if (!seen.insert(h.n).second) {
            throw InvalidSpec("spec '" + name + "': duplicate harmonic n = " + std::to_string(h.n));
        }
        max_n = std::max(max_n, h.n);
    }

    // Strong convexity: locate the minimum of rho on a dense grid, then polish.
    const TrigSeries rho(c0, harmonics);
    const int samples = 512 * std::max(1, max_n);
    int best = 0;
    double best_val = std::numeric_limits<double>::infinity();
    for (int k = 0; k < samples; ++k) {
        const double v = rho(kTwoPi * k / samples);
        if (v < best_val) {
            best_val = v;
            best = k;
        }
    }
    const double h = kTwoPi / samples;
    const auto [theta_min, rho_min] = boost::math::tools::brent_find_minima(
        [&](double t) { return rho(t); }, (best - 1) * h, (best + 1) * h,
        std::numeric_limits<double>::digits / 2);
    if (!(rho_min > 0.0)) {
        const double theta = std::fmod(theta_min + kTwoPi, kTwoPi);
        throw InvalidSpec("spec '" + name + "': radius of curvature not positive: rho(" +
                          fmt(theta) + ") = " + fmt(rho_min));
    }
}

FourierCurvatureSpec FourierCurvatureSpec::scaled(double factor) const {
    FourierCurvatureSpec out = *this;
    out.c0 *= factor;
    for (auto& h : out.harmonics) {
        h.a *= factor;
        h.b *= factor;
    }
    return out;
}

FourierCurvatureSpec FourierCurvatureSpec::rotated(double theta) const {
    FourierCurvatureSpec out = *this;
    const TrigSeries r = TrigSeries(c0, harmonics).rotated(theta);
    out.harmonics.assign(r.terms().begin(), r.terms().end());
    return out;
}

FourierCurvatureSpec FourierCurvatureSpec::reflected() const {
    FourierCurvatureSpec out = *this;
    for (auto& h : out.harmonics) h.b = -h.b;
    return out;
}

Jet3 reparametrize(const Jet3& f, const Jet3& u) {
    const double t1 = 1.0 / u.d1;
    const double t2 = -u.d2 * t1 * t1 * t1;
    const double t3 = (3.0 * u.d2 * u.d2 - u.d1 * u.d3) * std::pow(t1, 5);
    return {f.value, f.d1 * t1, f.d2 * t1 * t1 + f.d1 * t2,
            f.d3 * t1 * t1 * t1 + 3.0 * f.d2 * t1 * t2 + f.d1 * t3};
}

BoundaryCurve::BoundaryCurve(FourierCurvatureSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
    radius_ = TrigSeries(spec_.c0, spec_.harmonics);
    radius_cbrt_ = TrigSeries::approximate([this](double t) { return std::cbrt(radius_(t)); });
    perimeter_ = kTwoPi * spec_.c0;
    lazutkin_c_ = 1.0 / (kTwoPi * radius_cbrt_.mean());
}

BoundaryCurve build_domain(const FourierCurvatureSpec& spec) { return BoundaryCurve(spec); }

double BoundaryCurve::reduce(double s) const {
    double r = std::fmod(s, perimeter_);
    if (r < 0.0) r += perimeter_;
    if (r >= perimeter_) r = 0.0;
    return r;
}

double BoundaryCurve::tangent_angle(double s) const {
    const double target = reduce(s);
    const double theta = monotone_solve([this](double t) { return radius_.integral(t); },
                                        [this](double t) { return radius_(t); }, target, 0.0,
                                        kTwoPi, target / spec_.c0, 1e-15, "tangent_angle");
    return theta >= kTwoPi ? theta - kTwoPi : theta;
}

Eigen::Vector2d BoundaryCurve::position_at_angle(double theta) const {
    // int_0^theta rho(t) (cos t, sin t) dt, term by term.
    Eigen::Vector2d p(spec_.c0 * std::sin(theta), spec_.c0 * versin_term(1, theta));
    for (const auto& h : spec_.harmonics) {
        const int up = h.n + 1;
        const int dn = h.n - 1;
        p.x() += 0.5 * h.a * (sinc_term(up, theta) + sinc_term(dn, theta)) +
                 0.5 * h.b * (versin_term(up, theta) + versin_term(dn, theta));
        p.y() += 0.5 * h.a * (versin_term(up, theta) - versin_term(dn, theta)) +
                 0.5 * h.b * (sinc_term(dn, theta) - sinc_term(up, theta));
    }
    return p;
}

Eigen::Vector2d BoundaryCurve::chord(double theta0, double delta) const {
    const TrigSeries local = radius_.rotated(theta0);
    Eigen::Vector2d p(local.mean() * std::sin(delta), local.mean() * versin_term(1, delta));
    for (const auto& h : local.terms()) {
        const int up = h.n + 1;
        const int dn = h.n - 1;
        p.x() += 0.5 * h.a * (sinc_term(up, delta) + sinc_term(dn, delta)) +
                 0.5 * h.b * (versin_term(up, delta) + versin_term(dn, delta));
        p.y() += 0.5 * h.a * (versin_term(up, delta) - versin_term(dn, delta)) +
                 0.5 * h.b * (sinc_term(dn, delta) - sinc_term(up, delta));
    }
    return p;
}

double BoundaryCurve::closure_error() const {
    return (position_at_angle(kTwoPi) - position_at_angle(0.0)).norm();
}

double BoundaryCurve::lazutkin_x_at_angle(double theta) const {
    return lazutkin_c_ * radius_cbrt_.integral(theta);
}

double BoundaryCurve::angle_at_lazutkin_x(double x) const {
    double target = x - std::floor(x);
    if (target >= 1.0) target = 0.0;
    const double theta = monotone_solve([this](double t) { return lazutkin_x_at_angle(t); },
                                        [this](double t) { return lazutkin_c_ * radius_cbrt_(t); },
                                        target, 0.0, kTwoPi, kTwoPi * target, 1e-15,
                                        "angle_at_lazutkin_x");
    return theta >= kTwoPi ? theta - kTwoPi : theta;
}

Jet3 BoundaryCurve::radius_theta(double theta) const {
    const auto d = radius_.derivatives(theta);
    return {d[0], d[1], d[2], d[3]};
}

Jet3 BoundaryCurve::radius_s_at_angle(double theta) const {
    const Jet3 r = radius_theta(theta);
    // ds/dtheta = rho.
    return reparametrize(r, {0.0, r.value, r.d1, r.d2});
}

Jet3 BoundaryCurve::radius_x_at_angle(double theta) const {
    const Jet3 r = radius_theta(theta);
    const double c = lazutkin_c_;
    const double q = std::cbrt(r.value);
    const double q2 = q * q;
    // dx/dtheta = C rho^{1/3} and its theta-derivatives.
    const Jet3 x{0.0, c * q, c * r.d1 / (3.0 * q2),
                 c * (r.d2 / (3.0 * q2) - 2.0 * r.d1 * r.d1 / (9.0 * q2 * r.value))};
    return reparametrize(r, x);
}

Jet3 eval_curvature(const BoundaryCurve& curve, double s) {
    return curve.radius_s_at_angle(curve.tangent_angle(s));
}

BoundaryPoint eval_point(const BoundaryCurve& curve, double s) {
    const double theta = curve.tangent_angle(s);
    return {curve.position_at_angle(theta), theta};
}

}  // namespace lazlab
