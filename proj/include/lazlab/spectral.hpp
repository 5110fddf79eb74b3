#pragma once

#include <span>
#include <vector>

#include "lazlab/trig_series.hpp"

namespace lazlab {

// Periodic data sampled on the uniform grid x_i = i / N of [0, 1).

/// Trigonometric interpolant in the angle 2 pi x.
TrigSeries periodic_interpolant(std::span<const double> values);

/// Interpolant value at arbitrary x.
double periodic_eval(const TrigSeries& interpolant, double x);

/// d/dx at the grid points.
std::vector<double> periodic_derivative(std::span<const double> values);

struct PeriodicAntiderivative {
    std::vector<double> values;  // int_0^x (f - mean), zero at x = 0
    double mean = 0.0;
};

PeriodicAntiderivative periodic_antiderivative(std::span<const double> values);

/// True when xs[i] == i / N to within `tol`.
bool is_uniform_grid(std::span<const double> xs, double tol = 1e-12);

std::vector<double> uniform_grid(int n);

}  // namespace lazlab
