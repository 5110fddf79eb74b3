#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lazlab/expansion.hpp"
#include "lazlab/geometry.hpp"

namespace lazlab {

/// Geometric ladder y_k = y_max * ratio^k, k < n_samples, fitted with powers
/// up to y^fit_degree.
struct FitConfig {
    double y_max = 0.02;
    int n_samples = 20;
    double ratio = 0.8;
    int fit_degree = 9;
    double condition_limit = 1e12;
    double residual_limit = 1e-6;

    /// Throws PreconditionError.
    void validate() const;
};

struct FittedCoeffs {
    double alpha3 = 0.0;
    double alpha4 = 0.0;
    double beta4 = 0.0;
    /// y^3 coefficient of y1 - y when that power is allowed in the fit.
    double beta3_drift = 0.0;
    double residual_x = 0.0;
    double residual_y = 0.0;
    double condition = 0.0;
    bool reliable = true;
};

/// Measures the T^L expansion at base point x by least squares over the
/// ladder. Columns are scaled to unit norm and solved by column-pivoted QR.
FittedCoeffs fit_map_coefficients(const BoundaryCurve& curve, double x,
                                  const FitConfig& cfg = {});

enum class CoeffSource { closed, fitted };

const char* to_string(CoeffSource s);

struct PointFailure {
    double x = 0.0;
    std::string message;
};

/// Lazutkin coefficients sampled on x_i = i / N.
struct CoeffProfile {
    std::vector<double> x;
    std::vector<double> alpha3;
    std::vector<double> alpha4;
    std::vector<double> beta4;
    std::optional<std::vector<double>> alpha3_prime;
    CoeffSource source = CoeffSource::closed;
    /// Per-point fit diagnostics (fitted source only).
    std::vector<FittedCoeffs> fits;
    std::vector<PointFailure> failures;

    std::size_t size() const { return x.size(); }
    bool complete() const { return failures.empty(); }
};

/// N >= 8. Fitted points run concurrently; output order follows the grid.
CoeffProfile coefficient_profile(const BoundaryCurve& curve, int n, const FitConfig& cfg,
                                 CoeffSource source,
                                 const CoefficientModel& model = CoefficientModel::validated());

/// Fills alpha3_prime by spectral differentiation of the alpha3 column.
CoeffProfile differentiate_profile(const CoeffProfile& profile);

/// Least-squares weights of the coefficient model recovered from fitted maps.
struct WeightFit {
    CoefficientModel model;
    double residual_alpha3 = 0.0;  // ||A w - b|| / ||b||
    double residual_alpha4 = 0.0;
    double residual_beta4 = 0.0;
    int rows = 0;
};

/// Fits the basis weights on `points` base points of each curve.
WeightFit validate_weights(std::span<const BoundaryCurve> curves, int points,
                           const FitConfig& cfg = {});

/// Largest absolute difference between corresponding weights.
double max_weight_gap(const CoefficientModel& a, const CoefficientModel& b);

}  // namespace lazlab
