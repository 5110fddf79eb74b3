#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lazlab/expansion.hpp"
#include "lazlab/fitting.hpp"

namespace lazlab {

/// K = c_a3p alpha3' + c_a4 alpha4 + c_b4 beta4, designed so that
/// K = mu rho^-3 rho'(x)^3. Normalized to c_b4 = 2.
struct Combination {
    double c_a3p = 0.0;
    double c_a4 = 0.0;
    double c_b4 = 2.0;
    double mu = 0.0;
};

/// The combination (3, -14, 2) with mu = 2/3 stated in the literature.
inline constexpr Combination kLiteratureCombination{3.0, -14.0, 2.0, 2.0 / 3.0};

struct CombinationSearch {
    /// Rank of the three weight vectors in the basis (t1, t2, t3, t4).
    int rank = 0;
    std::optional<Combination> combination;
    /// max |t1..t3 weight| of the returned combination.
    double residual = 0.0;
    std::string diagnosis;
};

/// Looks for weights on (alpha3', alpha4, beta4) that cancel t1, t2 and t3
/// while leaving a non-zero multiple of t4.
CombinationSearch find_annihilating_combination(const QuarticWeights& alpha3_prime,
                                                const QuarticWeights& alpha4,
                                                const QuarticWeights& beta4);
CombinationSearch find_annihilating_combination(const CoefficientModel& model);

/// Weights of the combination on (t1, t2, t3, t4).
QuarticWeights combination_weights(const Combination& comb, const QuarticWeights& alpha3_prime,
                                   const QuarticWeights& alpha4, const QuarticWeights& beta4);

/// Pointwise K(x_i). Requires alpha3_prime.
std::vector<double> k_invariant(const CoeffProfile& profile, const Combination& comb);

/// Scale-free log radius of curvature on x_i = i / N, normalized to zero at x = 0.
struct CurvatureProfile {
    std::vector<double> x;
    std::vector<double> log_rho;

    std::size_t size() const { return x.size(); }
};

struct ReconstructConfig {
    int max_iterations = 60;
    double tolerance = 1e-13;
    /// Relative turning-number defect above which the input is flagged.
    double consistency_threshold = 1e-2;
};

struct Reconstruction {
    CurvatureProfile profile;
    /// v = 1 / (C rho^{1/3}) = d theta / dx.
    std::vector<double> v;
    /// (log rho)'(x).
    std::vector<double> slope;
    /// (int_0^1 v dx - 2 pi) / (2 pi); zero for data coming from a real domain.
    double turning_defect = 0.0;
    bool consistent = true;
    int iterations = 0;
    double residual = 0.0;
};

/// Recovers the curvature profile from alpha3 alone. With rho = (C v)^-3 the
/// alpha3 formula becomes the periodic boundary value problem
///   v'' = 12 alpha3(x) v - v^3 / 8,
/// solved by Newton iteration on a Fourier collocation grid started from the
/// leading-order balance v = sqrt(96 alpha3).
Reconstruction reconstruct_curvature(const CoeffProfile& profile,
                                     const ReconstructConfig& cfg = {});

/// Cube-root route for a usable combination: g = cbrt(K / mu), with |K|
/// below `floor` snapped to zero. Returns g and its mean.
struct SlopeEstimate {
    std::vector<double> slope;
    double mean = 0.0;
};
SlopeEstimate slope_from_invariant(std::span<const double> k, double mu, double floor);

/// Integrates a (log rho)' profile after removing its mean.
CurvatureProfile integrate_log_slope(std::span<const double> slope);

/// Samples log(rho(x) / rho(0)) of a known domain on the uniform grid.
CurvatureProfile true_curvature_profile(const BoundaryCurve& curve, int n);

struct MatchResult {
    double shift = 0.0;  // p1(x + shift) ~ p2(x), shift in [0, 1)
    bool reflected = false;
    double distance = 0.0;
    bool match = false;
};

inline constexpr double kMatchToleranceFitted = 2e-2;
inline constexpr double kMatchToleranceClosed = 1e-6;

/// Minimizes the sup distance between mean-free log profiles over shifts
/// (grid scan, then Brent refinement on the trigonometric interpolant) and
/// over orientation reversal.
MatchResult match_profiles(const CurvatureProfile& p1, const CurvatureProfile& p2,
                           double tolerance);

/// p(x + shift), renormalized to zero at x = 0. Evaluated spectrally.
CurvatureProfile shift_profile(const CurvatureProfile& p, double shift);

}  // namespace lazlab
