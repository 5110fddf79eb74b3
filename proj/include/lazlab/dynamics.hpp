#pragma once

#include <cstddef>
#include <vector>

#include "lazlab/geometry.hpp"

namespace lazlab {

/// Billiard state: impact arc length s in [0, L) and angle phi in (0, pi)
/// between the outgoing ray and the forward tangent.
struct PhasePoint {
    double s = 0.0;
    double phi = 0.0;
};

/// Smallest angle the solver accepts; closer to grazing the chord is too
/// short to resolve.
inline constexpr double kGrazingFloor = 1e-8;

/// One bounce resolved in tangent-angle coordinates.
struct Impact {
    double delta_theta = 0.0;  // tangent-angle advance, in (0, 2 pi)
    double delta_s = 0.0;      // arc-length advance, in (0, L)
    double phi1 = 0.0;         // outgoing angle at the next impact
    double residual = 0.0;     // signed distance of the new impact from the ray line
    int iterations = 0;
};

/// Next impact of the ray leaving tangent angle `theta` at angle `phi`.
Impact advance_from_angle(const BoundaryCurve& curve, double theta, double phi);

/// T(s, phi) = (s1, phi1).
PhasePoint billiard_step(const BoundaryCurve& curve, const PhasePoint& p);

/// The n iterates T(seed), ..., T^n(seed); the seed itself is not included.
std::vector<PhasePoint> orbit(const BoundaryCurve& curve, const PhasePoint& seed, std::size_t n);

/// Throws InvalidState unless kGrazingFloor <= phi < pi and s is finite.
void check_phase_point(const PhasePoint& p);

}  // namespace lazlab
