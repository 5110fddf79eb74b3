#pragma once

#include <vector>

#include "lazlab/geometry.hpp"

namespace lazlab {

/// Order-1 boundary jet of a boundary-preserving map
///   Phi(s, phi) = (a0(s) + O(phi), b1(s) phi + O(phi^2))
/// sampled on s_i = L1 i / N.
struct ConjugacyJet {
    std::vector<double> s;
    std::vector<double> a0;
    std::vector<double> a0_prime;
    std::vector<double> b1;
    std::vector<double> b1_prime;

    std::size_t size() const { return s.size(); }
};

inline constexpr int kJetGridSize = 512;

/// a0 = l2^{-1} o l1 with l_j the normalized Lazutkin abscissae; the jet of
/// L2^{-1} o L1 at phi = 0.
double transition_map(const BoundaryCurve& from, const BoundaryCurve& to, double s);

ConjugacyJet transition_jet(const BoundaryCurve& from, const BoundaryCurve& to,
                            int n = kJetGridSize);

struct JetSolveOptions {
    int n = kJetGridSize;
    double shooting_tolerance = 1e-12;  // relative to L2
    double ode_tolerance = 1e-13;
    int max_shooting_iterations = 50;
};

/// Solves the order-1 conjugacy equations
///   alpha1_2(a0) b1 = alpha1_1 a0'
///   beta2_2(a0) b1^2 = beta2_1 b1 + alpha1_1 b1'
/// with alpha1 = 2 rho and beta2 = -(2/3) rho', a0(0) = 0, shooting on b1(0)
/// so that a0(L1) = L2.
ConjugacyJet solve_jet_system(const BoundaryCurve& from, const BoundaryCurve& to,
                              const JetSolveOptions& opts = {});

struct JetResiduals {
    double first = 0.0;   // max |alpha1_2(a0) b1 - alpha1_1 a0'|
    double second = 0.0;  // max |beta2_2(a0) b1^2 - beta2_1 b1 - alpha1_1 b1'|
};

JetResiduals jet_system_residuals(const BoundaryCurve& from, const BoundaryCurve& to,
                                  const ConjugacyJet& jet);

struct TangencyReport {
    double a0_deviation = 0.0;
    double b1_deviation = 0.0;
    double tolerance = 0.0;
    bool tangent = false;
};

/// Order-1 tangency: compares a0 and b1 in sup norm.
TangencyReport verify_tangency(const ConjugacyJet& a, const ConjugacyJet& b, double tolerance,
                               int order = 1);

}  // namespace lazlab
