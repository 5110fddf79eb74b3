#pragma once

#include "lazlab/dynamics.hpp"
#include "lazlab/geometry.hpp"

namespace lazlab {

/// Lazutkin coordinates: x = C int_0^s rho^{-2/3} in [0, 1) and
/// y = 4 C rho^{1/3}(s) sin(phi / 2) > 0.
struct LazutkinPoint {
    double x = 0.0;
    double y = 0.0;
};

/// Result of T^L. `x` is unwrapped, x - x_prev = `advance` in (0, 1).
struct LazutkinStep {
    double x = 0.0;
    double y = 0.0;
    double advance = 0.0;

    LazutkinPoint wrapped() const;
};

/// 4 C rho^{1/3}: the image of phi = pi at tangent angle theta.
double lazutkin_y_bound(const BoundaryCurve& curve, double theta);

LazutkinPoint to_lazutkin(const BoundaryCurve& curve, const PhasePoint& p);

/// Throws InvalidState when y is outside (0, 4 C rho^{1/3}(s(x))).
PhasePoint from_lazutkin(const BoundaryCurve& curve, const LazutkinPoint& q);

/// T^L = L o T o L^{-1}.
LazutkinStep lazutkin_step(const BoundaryCurve& curve, const LazutkinPoint& q);

/// T^L starting from a known tangent angle; skips the x -> theta inversion.
LazutkinStep lazutkin_step_from_angle(const BoundaryCurve& curve, double theta, double x,
                                      double y);

}  // namespace lazlab
