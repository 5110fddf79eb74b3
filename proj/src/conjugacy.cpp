#include "lazlab/conjugacy.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "lazlab/errors.hpp"

namespace lazlab {

namespace {

// rho and d rho / ds at arc length s.
std::array<double, 2> radius_and_slope(const BoundaryCurve& c, double s) {
    const Jet3 j = c.radius_s_at_angle(c.tangent_angle(s));
    return {j.value, j.d1};
}

}  // namespace

double transition_map(const BoundaryCurve& from, const BoundaryCurve& to, double s) {
    const double theta1 = from.tangent_angle(s);
    const double x = from.lazutkin_x_at_angle(theta1);
    const double turns = std::floor(s / from.perimeter());
    if (x >= 1.0) return (turns + 1.0) * to.perimeter();
    return turns * to.perimeter() + to.arc_length(to.angle_at_lazutkin_x(x));
}

ConjugacyJet transition_jet(const BoundaryCurve& from, const BoundaryCurve& to, int n) {
    if (n < 2) throw PreconditionError("transition_jet: grid size must be >= 2");
    ConjugacyJet jet;
    jet.s.resize(n);
    jet.a0.resize(n);
    jet.a0_prime.resize(n);
    jet.b1.resize(n);
    jet.b1_prime.resize(n);
    const double c1 = from.lazutkin_constant();
    const double c2 = to.lazutkin_constant();
    for (int i = 0; i < n; ++i) {
        const double s = from.perimeter() * i / n;
        const double theta1 = from.tangent_angle(s);
        const double theta2 = to.angle_at_lazutkin_x(from.lazutkin_x_at_angle(theta1));
        const Jet3 r1 = from.radius_s_at_angle(theta1);
        const Jet3 r2 = to.radius_s_at_angle(theta2);
        jet.s[i] = s;
        jet.a0[i] = to.arc_length(theta2);
        jet.a0_prime[i] = c1 * std::pow(r2.value / r1.value, 2.0 / 3.0) / c2;
        jet.b1[i] = c1 * std::cbrt(r1.value / r2.value) / c2;
        jet.b1_prime[i] =
            jet.b1[i] / 3.0 * (r1.d1 / r1.value - r2.d1 * jet.a0_prime[i] / r2.value);
    }
    return jet;
}

ConjugacyJet solve_jet_system(const BoundaryCurve& from, const BoundaryCurve& to,
                              const JetSolveOptions& opts) {
    namespace ode = boost::numeric::odeint;
    using State = std::array<double, 2>;  // (a0, b1)

    const auto rhs = [&](const State& y, State& dy, double s) {
        const auto [p1, q1] = radius_and_slope(from, s);
        const auto [p2, q2] = radius_and_slope(to, y[0]);
        dy[0] = y[1] * p2 / p1;
        dy[1] = y[1] * (q1 - q2 * y[1]) / (3.0 * p1);
    };
    const double l1 = from.perimeter();
    const double l2 = to.perimeter();

    const auto endpoint = [&](double b0) {
        State y{0.0, b0};
        auto stepper = ode::make_controlled(opts.ode_tolerance, opts.ode_tolerance,
                                            ode::runge_kutta_dopri5<State>());
        ode::integrate_adaptive(stepper, rhs, y, 0.0, l1, l1 / opts.n);
        return y[0] - l2;
    };

    // Secant on b1(0); the constant-curvature solution b1 = 1 is the seed.
    double b_prev = 1.0;
    double f_prev = endpoint(b_prev);
    double b = 1.01;
    double f = endpoint(b);
    std::ostringstream trace;
    trace.precision(6);
    bool converged = std::abs(f_prev) <= opts.shooting_tolerance * l2;
    if (converged) {
        b = b_prev;
        f = f_prev;
    }
    for (int it = 0; it < opts.max_shooting_iterations && !converged; ++it) {
        trace << " " << f;
        if (f == f_prev) break;
        const double next = b - f * (b - b_prev) / (f - f_prev);
        b_prev = b;
        f_prev = f;
        b = next > 0.0 ? next : 0.5 * b_prev;
        f = endpoint(b);
        converged = std::abs(f) <= opts.shooting_tolerance * l2;
    }
    if (!converged) {
        throw NumericalError("solve_jet_system: shooting did not converge; endpoint residuals:" +
                             trace.str());
    }

    ConjugacyJet jet;
    jet.s.resize(opts.n);
    for (int i = 0; i < opts.n; ++i) jet.s[i] = l1 * i / opts.n;
    State y{0.0, b};
    std::vector<State> states;
    auto dense = ode::make_dense_output(opts.ode_tolerance, opts.ode_tolerance,
                                        ode::runge_kutta_dopri5<State>());
    ode::integrate_times(dense, rhs, y, jet.s.begin(), jet.s.end(), l1 / opts.n,
                         [&](const State& st, double) { states.push_back(st); });
    for (std::size_t i = 0; i < jet.s.size(); ++i) {
        State d{};
        rhs(states[i], d, jet.s[i]);
        jet.a0.push_back(states[i][0]);
        jet.b1.push_back(states[i][1]);
        jet.a0_prime.push_back(d[0]);
        jet.b1_prime.push_back(d[1]);
    }
    return jet;
}

JetResiduals jet_system_residuals(const BoundaryCurve& from, const BoundaryCurve& to,
                                  const ConjugacyJet& jet) {
    JetResiduals r;
    for (std::size_t i = 0; i < jet.size(); ++i) {
        const auto [p1, q1] = radius_and_slope(from, jet.s[i]);
        const auto [p2, q2] = radius_and_slope(to, jet.a0[i]);
        const double alpha1_1 = 2.0 * p1;
        const double alpha1_2 = 2.0 * p2;
        const double beta2_1 = -2.0 / 3.0 * q1;
        const double beta2_2 = -2.0 / 3.0 * q2;
        const double b = jet.b1[i];
        r.first = std::max(r.first, std::abs(alpha1_2 * b - alpha1_1 * jet.a0_prime[i]));
        r.second = std::max(r.second, std::abs(beta2_2 * b * b - beta2_1 * b -
                                               alpha1_1 * jet.b1_prime[i]));
    }
    return r;
}

TangencyReport verify_tangency(const ConjugacyJet& a, const ConjugacyJet& b, double tolerance,
                               int order) {
    if (order != 1) throw PreconditionError("verify_tangency: only order 1 is supported");
    if (a.size() != b.size()) {
        throw PreconditionError("verify_tangency: grid sizes differ");
    }
    TangencyReport r;
    r.tolerance = tolerance;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a.s[i] - b.s[i]) > 1e-12 * std::max(1.0, std::abs(a.s[i]))) {
            throw PreconditionError("verify_tangency: s-grids differ");
        }
        r.a0_deviation = std::max(r.a0_deviation, std::abs(a.a0[i] - b.a0[i]));
        r.b1_deviation = std::max(r.b1_deviation, std::abs(a.b1[i] - b.b1[i]));
    }
    r.tangent = r.a0_deviation < tolerance && r.b1_deviation < tolerance;
    return r;
}

}  // namespace lazlab
