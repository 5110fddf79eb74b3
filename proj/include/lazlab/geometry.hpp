#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lazlab/trig_series.hpp"

namespace lazlab {

/// Strongly convex domain given by its radius of curvature as a Fourier series
/// in the tangent angle theta:
///   rho(theta) = c0 + sum_n (a_n cos n theta + b_n sin n theta),  n >= 2.
/// The absence of n = 1 is what makes the boundary close.
struct FourierCurvatureSpec {
    std::string name;
    double c0 = 1.0;
    std::vector<Harmonic> harmonics;

    /// Throws InvalidSpec naming the violated invariant.
    void validate() const;

    /// Homothetic copy: every length multiplied by `factor`.
    FourierCurvatureSpec scaled(double factor) const;

    /// Same curve with the arc-length origin moved to tangent angle `theta`
    /// (and the figure rotated so that it has tangent angle 0 there).
    FourierCurvatureSpec rotated(double theta) const;

    /// Mirror image, traversed counterclockwise: rho(theta) -> rho(-theta).
    FourierCurvatureSpec reflected() const;
};

/// Value and first three derivatives of a scalar along some parameter.
struct Jet3 {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;
};

/// Re-expresses derivatives of f with respect to theta as derivatives with
/// respect to a new parameter u(theta), given the theta-derivatives of u.
Jet3 reparametrize(const Jet3& f_theta, const Jet3& u_theta);

struct BoundaryPoint {
    Eigen::Vector2d position;
    double tangent_angle = 0.0;
};

/// Realized boundary of a FourierCurvatureSpec. Immutable after construction.
///
/// Positions, arc length and the Lazutkin abscissa are all closed-form (or
/// spectrally resolved) functions of the tangent angle; arc length is inverted
/// by safeguarded Newton.
class BoundaryCurve {
public:
    explicit BoundaryCurve(FourierCurvatureSpec spec);

    const FourierCurvatureSpec& spec() const { return spec_; }
    double perimeter() const { return perimeter_; }
    /// Normalization constant C with C * int_0^L rho^{-2/3} ds = 1.
    double lazutkin_constant() const { return lazutkin_c_; }

    /// rho(theta) and rho^{1/3}(theta).
    const TrigSeries& radius() const { return radius_; }
    const TrigSeries& radius_cbrt() const { return radius_cbrt_; }

    /// Canonical representative of s in [0, L).
    double reduce(double s) const;

    /// s(theta) = int_0^theta rho; not reduced.
    double arc_length(double theta) const { return radius_.integral(theta); }
    /// theta(s) in [0, 2 pi) for s reduced into [0, L).
    double tangent_angle(double s) const;

    /// gamma(theta), with gamma(0) = 0 and tangent (1, 0) there.
    Eigen::Vector2d position_at_angle(double theta) const;
    /// gamma(theta0 + delta) - gamma(theta0) written in the frame whose first
    /// axis is the unit tangent at theta0. Accurate to relative rounding even
    /// for tiny delta.
    Eigen::Vector2d chord(double theta0, double delta) const;

    /// |gamma(2 pi) - gamma(0)|.
    double closure_error() const;

    /// x(theta) = C int_0^theta rho^{1/3}, in [0, 1] for theta in [0, 2 pi].
    double lazutkin_x_at_angle(double theta) const;
    /// Inverse of lazutkin_x_at_angle for x reduced into [0, 1).
    double angle_at_lazutkin_x(double x) const;

    /// rho and its theta-derivatives.
    Jet3 radius_theta(double theta) const;
    /// rho and its derivatives with respect to arc length at tangent angle theta.
    Jet3 radius_s_at_angle(double theta) const;
    /// rho and its derivatives with respect to the Lazutkin abscissa x.
    Jet3 radius_x_at_angle(double theta) const;

private:
    FourierCurvatureSpec spec_;
    TrigSeries radius_;
    TrigSeries radius_cbrt_;
    double perimeter_ = 0.0;
    double lazutkin_c_ = 0.0;
};

BoundaryCurve build_domain(const FourierCurvatureSpec& spec);

/// (rho, d rho/ds, d^2 rho/ds^2, d^3 rho/ds^3) at arc length s (reduced mod L).
Jet3 eval_curvature(const BoundaryCurve& curve, double s);

/// Position and tangent angle at arc length s (reduced mod L).
BoundaryPoint eval_point(const BoundaryCurve& curve, double s);

}  // namespace lazlab
