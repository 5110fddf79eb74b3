#include "lazlab/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "lazlab/errors.hpp"
#include "lazlab/lazutkin.hpp"
#include "lazlab/parallel.hpp"
#include "lazlab/spectral.hpp"

namespace lazlab {

void FitConfig::validate() const {
    std::ostringstream os;
    if (!(y_max > 0.0) || !std::isfinite(y_max)) os << "y_max must be positive; ";
    if (!(ratio > 0.0 && ratio < 1.0)) os << "ratio must lie in (0, 1); ";
    if (fit_degree < 4) os << "fit_degree must be >= 4; ";
    if (n_samples <= fit_degree) {
        os << "n_samples (" << n_samples << ") must exceed fit_degree (" << fit_degree << "); ";
    }
    const std::string msg = os.str();
    if (!msg.empty()) throw PreconditionError("fit config: " + msg.substr(0, msg.size() - 2));
}

namespace {

struct LsqResult {
    Eigen::VectorXd coeffs;
    double residual = 0.0;
    double condition = 0.0;
};

// Least squares for rhs ~ sum_j c_j y^(first + j), j < cols.
LsqResult power_fit(const Eigen::VectorXd& ys, const Eigen::VectorXd& rhs, int first, int cols) {
    const Eigen::Index rows = ys.size();
    Eigen::MatrixXd a(rows, cols);
    for (Eigen::Index k = 0; k < rows; ++k) {
        for (int j = 0; j < cols; ++j) a(k, j) = std::pow(ys(k), first + j);
    }
    const Eigen::VectorXd scale = a.colwise().norm().cwiseInverse().transpose();
    const Eigen::MatrixXd scaled = a * scale.asDiagonal();
    LsqResult out;
    out.coeffs = scaled.colPivHouseholderQr().solve(rhs).cwiseProduct(scale);
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled);
    const auto& sv = svd.singularValues();
    out.condition = sv(0) / sv(sv.size() - 1);
    // A vanishing signal (the circle) is measured against the leading power.
    const double denom = std::max(rhs.cwiseAbs().maxCoeff(), std::pow(ys.cwiseAbs().maxCoeff(), first));
    out.residual = (a * out.coeffs - rhs).cwiseAbs().maxCoeff() / denom;
    return out;
}

}  // namespace

FittedCoeffs fit_map_coefficients(const BoundaryCurve& curve, double x, const FitConfig& cfg) {
    cfg.validate();
    const double theta = curve.angle_at_lazutkin_x(x);
    // phi < pi / 2 on the whole ladder.
    const double y_limit = lazutkin_y_bound(curve, theta) * std::sin(std::numbers::pi / 4.0);
    if (cfg.y_max >= y_limit) {
        std::ostringstream os;
        os << "fit config: y_max = " << cfg.y_max << " reaches phi >= pi/2 at x = " << x
           << " (limit " << y_limit << ")";
        throw PreconditionError(os.str());
    }

    const int n = cfg.n_samples;
    Eigen::VectorXd ys(n), dx(n), dy(n);
    for (int k = 0; k < n; ++k) {
        const double y = cfg.y_max * std::pow(cfg.ratio, k);
        const LazutkinStep st = lazutkin_step_from_angle(curve, theta, x, y);
        ys(k) = y;
        dx(k) = st.advance - y;
        dy(k) = st.y - y;
    }

    const LsqResult fx = power_fit(ys, dx, 3, cfg.fit_degree - 2);
    const LsqResult fy = power_fit(ys, dy, 4, cfg.fit_degree - 3);
    const LsqResult fd = power_fit(ys, dy, 3, cfg.fit_degree - 2);

    FittedCoeffs out;
    out.alpha3 = fx.coeffs(0);
    out.alpha4 = fx.coeffs(1);
    out.beta4 = fy.coeffs(0);
    out.beta3_drift = fd.coeffs(0);
    out.residual_x = fx.residual;
    out.residual_y = fy.residual;
    out.condition = std::max({fx.condition, fy.condition, fd.condition});
    out.reliable = out.condition <= cfg.condition_limit && out.residual_x <= cfg.residual_limit &&
                   out.residual_y <= cfg.residual_limit;
    return out;
}

const char* to_string(CoeffSource s) { return s == CoeffSource::closed ? "closed" : "fitted"; }

CoeffProfile coefficient_profile(const BoundaryCurve& curve, int n, const FitConfig& cfg,
                                 CoeffSource source, const CoefficientModel& model) {
    if (n < 8) {
        throw PreconditionError("coefficient profile: grid size " + std::to_string(n) +
                                " below the minimum of 8");
    }
    if (source == CoeffSource::fitted) cfg.validate();

    CoeffProfile p;
    p.source = source;
    p.x = uniform_grid(n);
    p.alpha3.assign(n, 0.0);
    p.alpha4.assign(n, 0.0);
    p.beta4.assign(n, 0.0);
    if (source == CoeffSource::fitted) p.fits.resize(n);
    if (source == CoeffSource::closed) p.alpha3_prime.emplace(n, 0.0);
    std::vector<std::string> errors(n);

    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
        const double x = p.x[i];
        try {
            if (source == CoeffSource::closed) {
                const LazutkinCoefficients c = lazutkin_coefficients(curve, x, model);
                p.alpha3[i] = c.alpha3;
                p.alpha4[i] = c.alpha4;
                p.beta4[i] = c.beta4;
                (*p.alpha3_prime)[i] = c.alpha3_prime;
            } else {
                const FittedCoeffs f = fit_map_coefficients(curve, x, cfg);
                p.fits[i] = f;
                p.alpha3[i] = f.alpha3;
                p.alpha4[i] = f.alpha4;
                p.beta4[i] = f.beta4;
                if (!f.reliable) {
                    std::ostringstream os;
                    os << "unreliable fit (condition " << f.condition << ", residuals "
                       << f.residual_x << ", " << f.residual_y << ")";
                    errors[i] = os.str();
                }
            }
        } catch (const std::exception& e) {
            errors[i] = e.what();
            p.alpha3[i] = p.alpha4[i] = p.beta4[i] = std::nan("");
        }
    });
    for (int i = 0; i < n; ++i) {
        if (!errors[i].empty()) p.failures.push_back({p.x[i], errors[i]});
    }
    return p;
}

CoeffProfile differentiate_profile(const CoeffProfile& profile) {
    if (profile.size() < 8) {
        throw PreconditionError("differentiate_profile: grid size below the minimum of 8");
    }
    if (!is_uniform_grid(profile.x)) {
        throw PreconditionError("differentiate_profile: grid is not uniform on [0, 1)");
    }
    CoeffProfile out = profile;
    out.alpha3_prime = periodic_derivative(profile.alpha3);
    return out;
}

WeightFit validate_weights(std::span<const BoundaryCurve> curves, int points,
                           const FitConfig& cfg) {
    if (curves.size() < 3 || points < 8) {
        throw PreconditionError("validate_weights: need >= 3 domains and >= 8 points per domain");
    }
    const int rows = static_cast<int>(curves.size()) * points;
    Eigen::MatrixXd cubic(rows, 3), quartic(rows, 4);
    Eigen::VectorXd a3(rows), a4(rows), b4(rows);
    parallel_for(static_cast<std::size_t>(rows), [&](std::size_t r) {
        const BoundaryCurve& curve = curves[r / points];
        // Offset the grid so that symmetric domains do not repeat rows.
        const double x = (static_cast<double>(r % points) + 0.37) / points;
        const FittedCoeffs f = fit_map_coefficients(curve, x, cfg);
        const BasisTerms t = basis_terms(x_derivatives(curve, x), curve.lazutkin_constant());
        for (int j = 0; j < 3; ++j) cubic(r, j) = t.cubic[j];
        for (int j = 0; j < 4; ++j) quartic(r, j) = t.quartic[j];
        a3(r) = f.alpha3;
        a4(r) = f.alpha4;
        b4(r) = f.beta4;
    });

    const auto solve = [](const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double& residual) {
        const Eigen::VectorXd w = a.colPivHouseholderQr().solve(b);
        residual = (a * w - b).norm() / b.norm();
        return w;
    };
    WeightFit out;
    out.rows = rows;
    const Eigen::VectorXd w3 = solve(cubic, a3, out.residual_alpha3);
    const Eigen::VectorXd w4 = solve(quartic, a4, out.residual_alpha4);
    const Eigen::VectorXd v4 = solve(quartic, b4, out.residual_beta4);
    for (int j = 0; j < 3; ++j) out.model.alpha3[j] = w3(j);
    for (int j = 0; j < 4; ++j) {
        out.model.alpha4[j] = w4(j);
        out.model.beta4[j] = v4(j);
    }
    return out;
}

double max_weight_gap(const CoefficientModel& a, const CoefficientModel& b) {
    double gap = 0.0;
    for (int j = 0; j < 3; ++j) gap = std::max(gap, std::abs(a.alpha3[j] - b.alpha3[j]));
    for (int j = 0; j < 4; ++j) {
        gap = std::max(gap, std::abs(a.alpha4[j] - b.alpha4[j]));
        gap = std::max(gap, std::abs(a.beta4[j] - b.beta4[j]));
    }
    return gap;
}

}  // namespace lazlab
