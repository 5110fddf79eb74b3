#include "lazlab/spectral.hpp"

#include <cmath>
#include <numbers>

namespace lazlab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TrigSeries periodic_interpolant(std::span<const double> values) {
    return TrigSeries::from_samples(values);
}

double periodic_eval(const TrigSeries& interpolant, double x) { return interpolant(kTwoPi * x); }

std::vector<double> periodic_derivative(std::span<const double> values) {
    const TrigSeries d = periodic_interpolant(values).derivative();
    const int n = static_cast<int>(values.size());
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = kTwoPi * d(kTwoPi * i / n);
    return out;
}

PeriodicAntiderivative periodic_antiderivative(std::span<const double> values) {
    const TrigSeries f = periodic_interpolant(values);
    const TrigSeries zero_mean(0.0, {f.terms().begin(), f.terms().end()});
    const int n = static_cast<int>(values.size());
    PeriodicAntiderivative out;
    out.mean = f.mean();
    out.values.resize(n);
    for (int i = 0; i < n; ++i) out.values[i] = zero_mean.integral(kTwoPi * i / n) / kTwoPi;
    return out;
}

bool is_uniform_grid(std::span<const double> xs, double tol) {
    const double n = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (std::abs(xs[i] - static_cast<double>(i) / n) > tol) return false;
    }
    return true;
}

std::vector<double> uniform_grid(int n) {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = static_cast<double>(i) / n;
    return xs;
}

}  // namespace lazlab
