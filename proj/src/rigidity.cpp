#include "lazlab/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>

#include "lazlab/errors.hpp"
#include "lazlab/spectral.hpp"

namespace lazlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::Vector4d as_vector(const QuarticWeights& w) { return {w[0], w[1], w[2], w[3]}; }

}  // namespace

QuarticWeights combination_weights(const Combination& comb, const QuarticWeights& a3p,
                                   const QuarticWeights& a4, const QuarticWeights& b4) {
    QuarticWeights out{};
    for (int j = 0; j < 4; ++j) out[j] = comb.c_a3p * a3p[j] + comb.c_a4 * a4[j] + comb.c_b4 * b4[j];
    return out;
}

CombinationSearch find_annihilating_combination(const QuarticWeights& a3p,
                                                const QuarticWeights& a4,
                                                const QuarticWeights& b4) {
    Eigen::Matrix<double, 4, 3> m;
    m.col(0) = as_vector(a3p);
    m.col(1) = as_vector(a4);
    m.col(2) = as_vector(b4);

    CombinationSearch out;
    const double scale = m.norm();
    if (scale == 0.0) {
        out.diagnosis = "all weight vectors vanish";
        return out;
    }
    const double tol = 1e-9 * scale;

    const Eigen::JacobiSVD<Eigen::Matrix<double, 4, 3>> full(m);
    for (Eigen::Index i = 0; i < full.singularValues().size(); ++i) {
        if (full.singularValues()(i) > tol) ++out.rank;
    }

    // Combinations cancelling t1, t2, t3: kernel of the top 3x3 block.
    const Eigen::Matrix3d g = m.topRows<3>();
    const Eigen::JacobiSVD<Eigen::Matrix3d> svd(g, Eigen::ComputeFullV);
    std::vector<Eigen::Vector3d> kernel;
    for (int i = 0; i < 3; ++i) {
        if (svd.singularValues()(i) <= tol) kernel.push_back(svd.matrixV().col(i));
    }

    std::ostringstream os;
    if (kernel.empty()) {
        os << "only the trivial combination cancels t1, t2, t3 (weight rank " << out.rank << ")";
        out.diagnosis = os.str();
        return out;
    }
    bool any_t4 = false;
    for (const auto& n : kernel) any_t4 = any_t4 || std::abs(m.row(3).dot(n)) > tol;
    if (!any_t4) {
        os << "every combination cancelling t1, t2, t3 also cancels t4: the weight vectors of "
              "(alpha3', alpha4, beta4) have rank "
           << out.rank << " and span no direction that isolates t4";
        out.diagnosis = os.str();
        return out;
    }
    if (kernel.size() > 1) {
        os << "combination not unique: " << kernel.size()
           << "-dimensional family cancels t1, t2, t3 (weight rank " << out.rank << ")";
        out.diagnosis = os.str();
        return out;
    }
    const Eigen::Vector3d n = kernel.front();
    if (std::abs(n(2)) <= tol) {
        out.diagnosis = "cancelling combination has no beta4 component; cannot normalize c_b4 = 2";
        return out;
    }
    const Eigen::Vector3d c = n * (2.0 / n(2));
    Combination comb{c(0), c(1), c(2), m.row(3).dot(c)};
    out.residual = (g * c).cwiseAbs().maxCoeff();
    out.combination = comb;
    os << "unique combination (weight rank " << out.rank << ")";
    out.diagnosis = os.str();
    return out;
}

CombinationSearch find_annihilating_combination(const CoefficientModel& model) {
    return find_annihilating_combination(model.alpha3_prime(), model.alpha4, model.beta4);
}

std::vector<double> k_invariant(const CoeffProfile& profile, const Combination& comb) {
    if (!profile.alpha3_prime) {
        throw PreconditionError("k_invariant: profile has no alpha3' column");
    }
    const auto& a3p = *profile.alpha3_prime;
    std::vector<double> k(profile.size());
    for (std::size_t i = 0; i < k.size(); ++i) {
        k[i] = comb.c_a3p * a3p[i] + comb.c_a4 * profile.alpha4[i] + comb.c_b4 * profile.beta4[i];
    }
    return k;
}

Reconstruction reconstruct_curvature(const CoeffProfile& profile, const ReconstructConfig& cfg) {
    const int n = static_cast<int>(profile.size());
    if (n < 8) throw PreconditionError("reconstruct_curvature: grid size below the minimum of 8");
    if (!is_uniform_grid(profile.x)) {
        throw PreconditionError("reconstruct_curvature: grid is not uniform on [0, 1)");
    }
    for (double a : profile.alpha3) {
        if (!std::isfinite(a)) throw PreconditionError("reconstruct_curvature: non-finite alpha3");
    }

    // Circulant spectral second derivative on the unit-period grid.
    std::vector<double> unit(n, 0.0);
    unit[0] = 1.0;
    const TrigSeries second = periodic_interpolant(unit).derivative().derivative();
    Eigen::MatrixXd d2(n, n);
    for (int i = 0; i < n; ++i) {
        const double val = kTwoPi * kTwoPi * second(kTwoPi * i / n);
        for (int j = 0; j < n; ++j) d2((i + j) % n, j) = val;
    }

    const Eigen::Map<const Eigen::VectorXd> a3(profile.alpha3.data(), n);
    const double mean_a3 = a3.mean();
    if (!(mean_a3 > 0.0)) {
        throw NumericalError("reconstruct_curvature: alpha3 has non-positive mean");
    }
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = std::sqrt(96.0 * (a3(i) > 0.0 ? a3(i) : mean_a3));

    const auto residual = [&](const Eigen::VectorXd& w) -> Eigen::VectorXd {
        return d2 * w - 12.0 * a3.cwiseProduct(w) + w.cwiseProduct(w).cwiseProduct(w) / 8.0;
    };

    Reconstruction out;
    Eigen::VectorXd f = residual(v);
    bool converged = false;
    for (int it = 0; it < cfg.max_iterations; ++it) {
        Eigen::MatrixXd jac = d2;
        jac.diagonal() += -12.0 * a3 + 3.0 / 8.0 * v.cwiseProduct(v);
        const Eigen::VectorXd step = jac.partialPivLu().solve(-f);
        double t = 1.0;
        Eigen::VectorXd trial = v + step;
        Eigen::VectorXd ft = residual(trial);
        while (ft.norm() > f.norm() && t > 1e-4) {
            t *= 0.5;
            trial = v + t * step;
            ft = residual(trial);
        }
        v = trial;
        f = ft;
        out.iterations = it + 1;
        if (t * step.cwiseAbs().maxCoeff() <= cfg.tolerance * v.cwiseAbs().maxCoeff()) {
            converged = true;
            break;
        }
    }
    out.residual = f.cwiseAbs().maxCoeff();
    if (!converged || v.minCoeff() <= 0.0) {
        std::ostringstream os;
        os << "reconstruct_curvature: Newton did not reach a positive solution after "
           << out.iterations << " iterations (residual " << out.residual << ")";
        throw NumericalError(os.str());
    }

    out.v.assign(v.data(), v.data() + n);
    out.profile.x = profile.x;
    out.profile.log_rho.resize(n);
    const double log_v0 = std::log(v(0));
    for (int i = 0; i < n; ++i) out.profile.log_rho[i] = -3.0 * (std::log(v(i)) - log_v0);
    out.slope = periodic_derivative(out.profile.log_rho);
    out.turning_defect = (v.mean() - kTwoPi) / kTwoPi;
    out.consistent = std::abs(out.turning_defect) <= cfg.consistency_threshold;
    return out;
}

SlopeEstimate slope_from_invariant(std::span<const double> k, double mu, double floor) {
    if (mu == 0.0) throw PreconditionError("slope_from_invariant: mu = 0");
    SlopeEstimate out;
    out.slope.resize(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) {
        out.slope[i] = std::abs(k[i]) < floor ? 0.0 : std::cbrt(k[i] / mu);
        out.mean += out.slope[i];
    }
    if (!k.empty()) out.mean /= static_cast<double>(k.size());
    return out;
}

CurvatureProfile integrate_log_slope(std::span<const double> slope) {
    CurvatureProfile out;
    out.x = uniform_grid(static_cast<int>(slope.size()));
    out.log_rho = periodic_antiderivative(slope).values;
    return out;
}

CurvatureProfile true_curvature_profile(const BoundaryCurve& curve, int n) {
    CurvatureProfile out;
    out.x = uniform_grid(n);
    out.log_rho.resize(n);
    const double log_rho0 = std::log(curve.radius()(0.0));
    for (int i = 0; i < n; ++i) {
        out.log_rho[i] = std::log(curve.radius()(curve.angle_at_lazutkin_x(out.x[i]))) - log_rho0;
    }
    return out;
}

CurvatureProfile shift_profile(const CurvatureProfile& p, double shift) {
    const TrigSeries f = periodic_interpolant(p.log_rho);
    const double origin = periodic_eval(f, shift);
    CurvatureProfile out;
    out.x = p.x;
    out.log_rho.resize(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out.log_rho[i] = periodic_eval(f, p.x[i] + shift) - origin;
    return out;
}

MatchResult match_profiles(const CurvatureProfile& p1, const CurvatureProfile& p2,
                           double tolerance) {
    const int n = static_cast<int>(p1.size());
    if (p2.size() != p1.size()) {
        throw PreconditionError("match_profiles: grid sizes differ (" + std::to_string(p1.size()) +
                                " vs " + std::to_string(p2.size()) + ")");
    }
    if (n < 2) throw PreconditionError("match_profiles: empty profiles");

    const TrigSeries f2 = periodic_interpolant(p2.log_rho);
    std::vector<double> target(n);
    for (int i = 0; i < n; ++i) target[i] = p2.log_rho[i] - f2.mean();

    MatchResult best;
    best.distance = std::numeric_limits<double>::infinity();
    for (bool reflected : {false, true}) {
        std::vector<double> src(n);
        for (int i = 0; i < n; ++i) src[i] = reflected ? p1.log_rho[(n - i) % n] : p1.log_rho[i];
        const TrigSeries f1 = periodic_interpolant(src);
        const double m1 = f1.mean();

        const auto sup_at = [&](double c) {
            double d = 0.0;
            for (int i = 0; i < n; ++i) {
                d = std::max(d, std::abs(periodic_eval(f1, static_cast<double>(i) / n + c) - m1 -
                                         target[i]));
            }
            return d;
        };

        int best_k = 0;
        double grid_best = std::numeric_limits<double>::infinity();
        for (int k = 0; k < n; ++k) {
            double d = 0.0;
            for (int i = 0; i < n; ++i) d = std::max(d, std::abs(src[(i + k) % n] - m1 - target[i]));
            if (d < grid_best - 1e-12) {
                grid_best = d;
                best_k = k;
            }
        }
        double c = static_cast<double>(best_k) / n;
        double dist = grid_best;
        const double h = 1.0 / n;
        const auto [c_ref, d_ref] = boost::math::tools::brent_find_minima(
            sup_at, c - h, c + h, std::numeric_limits<double>::digits / 2);
        if (d_ref < dist) {
            c = c_ref;
            dist = d_ref;
        }
        if (dist < best.distance - 1e-12) {
            best.distance = dist;
            best.shift = c - std::floor(c);
            if (best.shift >= 1.0) best.shift = 0.0;
            best.reflected = reflected;
        }
    }
    best.match = best.distance < tolerance;
    return best;
}

}  // namespace lazlab
