#include "lazlab/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "lazlab/conjugacy.hpp"
#include "lazlab/dynamics.hpp"
#include "lazlab/expansion.hpp"
#include "lazlab/fitting.hpp"
#include "lazlab/lazutkin.hpp"
#include "lazlab/rigidity.hpp"

namespace lazlab {

namespace {

using std::numbers::pi;

FourierCurvatureSpec circle() { return {"circle", 1.0, {}}; }

FourierCurvatureSpec oval(double eps) { return {"oval", 1.0, {{2, eps, 0.0}}}; }

FourierCurvatureSpec lopsided() {
    return {"lopsided", 1.0, {{2, 0.15, 0.05}, {3, 0.06, -0.04}, {5, 0.01, 0.015}}};
}

FourierCurvatureSpec wobble() { return {"wobble", 1.3, {{3, 0.12, 0.05}, {4, -0.04, 0.03}}}; }

double sup_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double a : v) m = std::max(m, std::abs(a));
    return m;
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double sup_relative_gap(const std::vector<double>& fit, const std::vector<double>& ref) {
    return sup_diff(fit, ref) / sup_abs(ref);
}

// Sample the sequence with fixed offset so symmetric domains do not repeat points.
double sample_x(int i, int n) { return (i + 0.37) / n; }

struct Outcome {
    bool pass = false;
    std::string detail;
};

Outcome circle_law() {
    const BoundaryCurve c(circle());
    const double exact = pi * pi / 24.0;
    double worst_a3 = 0.0, worst_a4 = 0.0, worst_b4 = 0.0, oracle_gap = 0.0;
    for (double x : {0.0, 0.3, 0.7}) {
        const FittedCoeffs f = fit_map_coefficients(c, x);
        worst_a3 = std::max(worst_a3, std::abs(f.alpha3 / exact - 1.0));
        worst_a4 = std::max(worst_a4, std::abs(f.alpha4));
        worst_b4 = std::max(worst_b4, std::abs(f.beta4));
        for (double y : {0.001, 0.01, 0.1}) {
            const LazutkinStep st = lazutkin_step(c, {x, y});
            oracle_gap = std::max(oracle_gap,
                                  std::abs(st.advance - 2.0 / pi * std::asin(pi * y / 2.0)));
        }
    }
    std::ostringstream os;
    os << "alpha3 rel err " << worst_a3 << ", |alpha4| " << worst_a4 << ", |beta4| " << worst_b4
       << ", map vs (2/pi)asin(pi y/2) " << oracle_gap;
    return {worst_a3 < 1e-3 && worst_a4 < 1e-3 && worst_b4 < 1e-3 && oracle_gap < 1e-12, os.str()};
}

Outcome closed_vs_fitted() {
    const std::vector<BoundaryCurve> curves{BoundaryCurve(oval(0.3)), BoundaryCurve(lopsided()),
                                            BoundaryCurve(wobble())};
    const WeightFit w = validate_weights(curves, 12);
    const double weight_gap = max_weight_gap(w.model, CoefficientModel::validated());

    const BoundaryCurve c(oval(0.3));
    const CoeffProfile closed = coefficient_profile(c, 16, {}, CoeffSource::closed);
    const CoeffProfile fitted = coefficient_profile(c, 16, {}, CoeffSource::fitted);
    const double g3 = sup_relative_gap(fitted.alpha3, closed.alpha3);
    const double g4 = sup_relative_gap(fitted.alpha4, closed.alpha4);
    const double gb = sup_relative_gap(fitted.beta4, closed.beta4);
    std::ostringstream os;
    os << "weights vs validated " << weight_gap << "; sup rel gap alpha3 " << g3 << ", alpha4 "
       << g4 << ", beta4 " << gb;
    return {fitted.complete() && weight_gap < 1e-4 && g3 < 0.02 && g4 < 0.02 && gb < 0.02,
            os.str()};
}

Outcome structural_zeros() {
    double worst = 0.0;
    for (const auto& spec : {oval(0.3), lopsided(), wobble()}) {
        const BoundaryCurve c(spec);
        for (int i = 0; i < 8; ++i) {
            const double s = c.perimeter() * sample_x(i, 8);
            const ABCoefficients ab = ab_coefficients(c, s);
            worst = std::max({worst, std::abs(ab.a[1]), std::abs(ab.b[1]),
                              std::abs(ab.b[0] - ab.a[0]), std::abs(24.0 * ab.b[2] + ab.b[0])});
        }
    }
    std::ostringstream os;
    os << "max |A2|, |B2|, |B1 - A1|, |24 B3 + B1| = " << worst << " over 3 domains x 8 points";
    return {worst < 1e-12, os.str()};
}

Outcome no_cubic_drift() {
    double worst = 0.0;
    for (const auto& spec : {oval(0.3), lopsided(), wobble()}) {
        const BoundaryCurve c(spec);
        for (int i = 0; i < 8; ++i) {
            worst = std::max(worst, std::abs(fit_map_coefficients(c, sample_x(i, 8)).beta3_drift));
        }
    }
    std::ostringstream os;
    os << "max |y^3 coefficient of y1 - y| = " << worst << " over 3 domains x 8 points";
    return {worst < 1e-3, os.str()};
}

Outcome combination_exists() {
    const CombinationSearch v = find_annihilating_combination(CoefficientModel::validated());
    const CoefficientModel lit = CoefficientModel::literature();
    const CombinationSearch l =
        find_annihilating_combination(kLiteratureAlpha3Prime, lit.alpha4, lit.beta4);
    std::ostringstream os;
    os << "validated weights: " << v.diagnosis;
    if (v.combination) {
        os << " (" << v.combination->c_a3p << ", " << v.combination->c_a4 << ", "
           << v.combination->c_b4 << "), mu " << v.combination->mu << ", residual " << v.residual;
    }
    os << "; literature value (3, -14, 2), mu 2/3";
    if (l.combination) {
        os << "; literature weights themselves give (" << l.combination->c_a3p << ", "
           << l.combination->c_a4 << ", " << l.combination->c_b4 << "), mu " << l.combination->mu;
    }
    return {v.combination.has_value() && v.residual < 1e-12, os.str()};
}

Outcome k_identity() {
    const CombinationSearch search = find_annihilating_combination(CoefficientModel::validated());
    const Combination comb = search.combination.value_or(kLiteratureCombination);
    const BoundaryCurve c(oval(0.3));
    const int n = 64;

    const CoeffProfile closed = coefficient_profile(c, n, {}, CoeffSource::closed);
    const std::vector<double> k_closed = k_invariant(closed, comb);
    const CoeffProfile fitted =
        differentiate_profile(coefficient_profile(c, n, {}, CoeffSource::fitted));
    const std::vector<double> k_fitted = k_invariant(fitted, comb);

    double closed_err = 0.0, fitted_rel = 0.0;
    for (int i = 0; i < n; ++i) {
        const Jet3 r = x_derivatives(c, closed.x[i]);
        const double g = r.d1 / r.value;
        const double target = comb.mu * g * g * g;
        closed_err = std::max(closed_err, std::abs(k_closed[i] - target));
        if (std::abs(r.d1) > 0.05) {
            fitted_rel = std::max(fitted_rel, std::abs(k_fitted[i] / target - 1.0));
        }
    }
    // The literature weights are self-consistent with their own cancelling
    // combination; measure that combination on the simulated map as well.
    const CoefficientModel lit = CoefficientModel::literature();
    const CombinationSearch lit_search =
        find_annihilating_combination(kLiteratureAlpha3Prime, lit.alpha4, lit.beta4);
    double lit_fitted_rel = 0.0;
    if (lit_search.combination) {
        const Combination& lc = *lit_search.combination;
        const std::vector<double> k_lit = k_invariant(fitted, lc);
        for (int i = 0; i < n; ++i) {
            const Jet3 r = x_derivatives(c, closed.x[i]);
            const double g = r.d1 / r.value;
            if (std::abs(r.d1) > 0.05) {
                lit_fitted_rel =
                    std::max(lit_fitted_rel, std::abs(k_lit[i] / (lc.mu * g * g * g) - 1.0));
            }
        }
    }
    std::ostringstream os;
    os << (search.combination ? "found" : "literature") << " combination (" << comb.c_a3p << ", "
       << comb.c_a4 << ", " << comb.c_b4 << "), mu " << comb.mu
       << ": closed max |K - mu rho^-3 rho'^3| " << closed_err << ", fitted max rel err "
       << fitted_rel;
    if (lit_search.combination) {
        os << "; (" << lit_search.combination->c_a3p << ", " << lit_search.combination->c_a4
           << ", " << lit_search.combination->c_b4 << ") on the fitted map: max rel err "
           << lit_fitted_rel;
    }
    return {closed_err < 1e-10 && fitted_rel < 0.05, os.str()};
}

Outcome reconstruction_round_trip() {
    const BoundaryCurve c(oval(0.3));
    const int n = 64;
    const CurvatureProfile truth = true_curvature_profile(c, n);
    const Reconstruction closed =
        reconstruct_curvature(coefficient_profile(c, n, {}, CoeffSource::closed));
    const CoeffProfile fp = coefficient_profile(c, n, {}, CoeffSource::fitted);
    const Reconstruction fitted = reconstruct_curvature(fp);
    const MatchResult mc = match_profiles(closed.profile, truth, kMatchToleranceClosed);
    const MatchResult mf = match_profiles(fitted.profile, truth, kMatchToleranceFitted);
    std::ostringstream os;
    os << "closed distance " << mc.distance << " (shift " << mc.shift << "), fitted distance "
       << mf.distance << " (shift " << mf.shift << ")";
    return {fp.complete() && mc.distance < 1e-8 && mf.distance < 1e-2, os.str()};
}

Outcome discrimination() {
    const int n = 64;
    const auto rebuild = [&](const BoundaryCurve& c) {
        return reconstruct_curvature(coefficient_profile(c, n, {}, CoeffSource::fitted)).profile;
    };
    const MatchResult apart = match_profiles(rebuild(BoundaryCurve(oval(0.3))),
                                             rebuild(BoundaryCurve(oval(0.2))),
                                             kMatchToleranceFitted);

    // Move the origin to the point where x = 0.25 on an asymmetric domain.
    const BoundaryCurve base(lopsided());
    const double theta_c = base.angle_at_lazutkin_x(0.25);
    const BoundaryCurve moved(lopsided().rotated(theta_c));
    const MatchResult same = match_profiles(rebuild(base), rebuild(moved), kMatchToleranceFitted);
    const double shift_err = std::abs(std::remainder(same.shift - 0.25, 1.0));

    std::ostringstream os;
    os << "eps 0.3 vs 0.2 distance " << apart.distance << "; shifted copy distance "
       << same.distance << ", shift " << same.shift << " (error " << shift_err << ", subgrid step "
       << 1.0 / n << ")";
    return {!apart.match && apart.distance > 0.05 && same.match && !same.reflected &&
                shift_err < 1.0 / n,
            os.str()};
}

Outcome homothety() {
    const FourierCurvatureSpec spec = lopsided();
    const BoundaryCurve a(spec);
    const BoundaryCurve b(spec.scaled(2.0));
    LazutkinPoint qa{0.1, 0.05};
    LazutkinPoint qb = qa;
    double orbit_gap = 0.0;
    for (int k = 0; k < 100; ++k) {
        qa = lazutkin_step(a, qa).wrapped();
        qb = lazutkin_step(b, qb).wrapped();
        orbit_gap = std::max({orbit_gap, std::abs(std::remainder(qa.x - qb.x, 1.0)),
                              std::abs(qa.y - qb.y)});
    }
    const int n = 32;
    const auto rebuild = [&](const BoundaryCurve& c, CoeffSource src) {
        return reconstruct_curvature(coefficient_profile(c, n, {}, src)).profile.log_rho;
    };
    const double closed_gap =
        sup_diff(rebuild(a, CoeffSource::closed), rebuild(b, CoeffSource::closed));
    const double fitted_gap =
        sup_diff(rebuild(a, CoeffSource::fitted), rebuild(b, CoeffSource::fitted));
    std::ostringstream os;
    os << "orbit max gap over 100 steps " << orbit_gap << "; profile gap closed " << closed_gap
       << ", fitted " << fitted_gap << " (scale is not recoverable)";
    return {orbit_gap < 1e-10 && closed_gap < 1e-10 && fitted_gap < 1e-8, os.str()};
}

Outcome conjugacy_jet() {
    std::ostringstream os;
    bool pass = true;
    const std::pair<FourierCurvatureSpec, FourierCurvatureSpec> pairs[] = {
        {oval(0.3), lopsided()},
        {wobble(), oval(0.15)},
    };
    for (const auto& [s1, s2] : pairs) {
        const BoundaryCurve c1(s1);
        const BoundaryCurve c2(s2);
        const TangencyReport r =
            verify_tangency(solve_jet_system(c1, c2), transition_jet(c1, c2), 1e-8);
        pass = pass && r.tangent;
        os << s1.name << " -> " << s2.name << ": a0 " << r.a0_deviation << ", b1 "
           << r.b1_deviation << "; ";
    }
    std::string d = os.str();
    return {pass, d.substr(0, d.size() - 2)};
}

Outcome coordinate_round_trip() {
    const BoundaryCurve c(lopsided());
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> us(0.0, c.perimeter());
    std::uniform_real_distribution<double> uphi(1e-6, pi - 1e-6);
    double rt = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const PhasePoint p{us(rng), uphi(rng)};
        const PhasePoint back = from_lazutkin(c, to_lazutkin(c, p));
        rt = std::max({rt, std::abs(std::remainder(back.s - p.s, c.perimeter())),
                       std::abs(back.phi - p.phi)});
    }
    double rev = 0.0;
    for (int k = 0; k < 200; ++k) {
        const PhasePoint p{us(rng), uphi(rng)};
        const PhasePoint q = billiard_step(c, p);
        const PhasePoint back = billiard_step(c, {q.s, pi - q.phi});
        rev = std::max({rev, std::abs(std::remainder(back.s - p.s, c.perimeter())),
                        std::abs(back.phi - (pi - p.phi))});
    }
    std::ostringstream os;
    os << "round trip max error " << rt << " (1000 states), time reversal " << rev
       << " (200 states)";
    return {rt < 1e-12 && rev < 1e-11, os.str()};
}

struct Criterion {
    const char* title;
    Outcome (*run)();
};

constexpr Criterion kCriteria[kCriterionCount] = {
    {"circle coefficient law", circle_law},
    {"closed-form vs fitted agreement", closed_vs_fitted},
    {"structural zeros", structural_zeros},
    {"no cubic drift", no_cubic_drift},
    {"annihilating combination exists", combination_exists},
    {"K identity", k_identity},
    {"reconstruction round trip", reconstruction_round_trip},
    {"discrimination", discrimination},
    {"homothety", homothety},
    {"conjugacy jet", conjugacy_jet},
    {"coordinate round trip", coordinate_round_trip},
};

}  // namespace

CriterionResult run_criterion(int id) {
    if (id < 1 || id > kCriterionCount) {
        throw std::out_of_range("acceptance criterion " + std::to_string(id) + " does not exist");
    }
    const Criterion& c = kCriteria[id - 1];
    CriterionResult r;
    r.id = id;
    r.title = c.title;
    const auto start = std::chrono::steady_clock::now();
    try {
        const Outcome o = c.run();
        r.pass = o.pass;
        r.detail = o.detail;
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::vector<CriterionResult> run_acceptance(
    const std::function<void(const CriterionResult&)>& report) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) {
        out.push_back(run_criterion(id));
        if (report) report(out.back());
    }
    return out;
}

std::string format_result(const CriterionResult& r) {
    std::ostringstream os;
    os.precision(3);
    os << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.title << ": " << r.detail << " ("
       << std::fixed << r.seconds << " s)";
    return os.str();
}

}  // namespace lazlab
