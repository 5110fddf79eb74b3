#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace lazlab {

/// sin(m d) / m
inline double sinc_term(int m, double d) { return std::sin(m * d) / m; }

/// (1 - cos(m d)) / m, written as 2 sin^2(m d / 2) / m.
inline double versin_term(int m, double d) {
    const double h = std::sin(0.5 * m * d);
    return 2.0 * h * h / m;
}

struct Harmonic {
    int n = 0;
    double a = 0.0;  // cosine coefficient
    double b = 0.0;  // sine coefficient
};

/// Real trigonometric polynomial f(t) = mean + sum_n (a_n cos nt + b_n sin nt)
/// on the 2*pi-periodic circle. Harmonics may be sparse; n >= 1.
class TrigSeries {
public:
    TrigSeries() = default;
    TrigSeries(double mean, std::vector<Harmonic> terms);

    /// Interpolating series of M equispaced samples f(2*pi*k/M). For even M the
    /// Nyquist mode is kept as a pure cosine, so the series reproduces the
    /// samples exactly and its odd derivatives vanish there.
    static TrigSeries from_samples(std::span<const double> samples);

    /// Samples `f` on a doubling grid until the upper half of the spectrum
    /// falls below `rel_tol * |mean|`.
    static TrigSeries approximate(const std::function<double(double)>& f, double rel_tol = 1e-15,
                                  int max_samples = 1 << 16);

    double mean() const { return mean_; }
    std::span<const Harmonic> terms() const { return terms_; }
    int max_order() const { return terms_.empty() ? 0 : terms_.back().n; }

    double operator()(double t) const;

    /// f, f', f'', f''' at t.
    std::array<double, 4> derivatives(double t) const;

    /// Integral over [0, t].
    double integral(double t) const;

    /// Integral over [t0, t0 + delta], free of the cancellation that
    /// integral(t0 + delta) - integral(t0) suffers for small delta.
    double increment(double t0, double delta) const;

    /// g(u) = f(t0 + u).
    TrigSeries rotated(double t0) const;

    TrigSeries scaled(double factor) const;

    /// Term-wise derivative.
    TrigSeries derivative() const;

private:
    double mean_ = 0.0;
    std::vector<Harmonic> terms_;
};

}  // namespace lazlab
