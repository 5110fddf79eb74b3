#include "lazlab/trig_series.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

namespace lazlab {

TrigSeries::TrigSeries(double mean, std::vector<Harmonic> terms)
    : mean_(mean), terms_(std::move(terms)) {
    std::sort(terms_.begin(), terms_.end(),
              [](const Harmonic& l, const Harmonic& r) { return l.n < r.n; });
    for (const auto& h : terms_) {
        if (h.n < 1) throw std::invalid_argument("TrigSeries: harmonic order must be >= 1");
    }
}

TrigSeries TrigSeries::from_samples(std::span<const double> samples) {
    const int m = static_cast<int>(samples.size());
    if (m < 1) throw std::invalid_argument("TrigSeries::from_samples: no samples");
    std::vector<double> in(samples.begin(), samples.end());
    std::vector<std::complex<double>> spec;
    Eigen::FFT<double> fft;
    fft.fwd(spec, in);

    std::vector<Harmonic> terms;
    terms.reserve(m / 2);
    const int half = (m - 1) / 2;
    for (int k = 1; k <= half; ++k) {
        terms.push_back({k, 2.0 * spec[k].real() / m, -2.0 * spec[k].imag() / m});
    }
    if (m % 2 == 0 && m > 1) terms.push_back({m / 2, spec[m / 2].real() / m, 0.0});
    return TrigSeries(spec[0].real() / m, std::move(terms));
}

TrigSeries TrigSeries::approximate(const std::function<double(double)>& f, double rel_tol,
                                   int max_samples) {
    for (int m = 64;; m *= 2) {
        std::vector<double> samples(m);
        for (int k = 0; k < m; ++k) samples[k] = f(2.0 * std::numbers::pi * k / m);
        TrigSeries s = from_samples(samples);
        const double scale = std::max(std::abs(s.mean_), 1e-300);
        double tail = 0.0;
        for (const auto& h : s.terms_) {
            if (h.n > m / 4) tail = std::max(tail, std::hypot(h.a, h.b));
        }
        if (tail <= rel_tol * scale || m >= max_samples) {
            if (tail > 1e-12 * scale) {
                throw std::runtime_error("TrigSeries::approximate: spectrum did not decay");
            }
            // Drop the resolved-to-zero tail; it only costs evaluation time.
            std::erase_if(s.terms_, [&](const Harmonic& h) {
                return h.n > m / 4 && std::hypot(h.a, h.b) <= rel_tol * scale;
            });
            return s;
        }
    }
}

double TrigSeries::operator()(double t) const {
    double v = mean_;
    for (const auto& h : terms_) {
        v += h.a * std::cos(h.n * t) + h.b * std::sin(h.n * t);
    }
    return v;
}

std::array<double, 4> TrigSeries::derivatives(double t) const {
    std::array<double, 4> d{mean_, 0.0, 0.0, 0.0};
    for (const auto& h : terms_) {
        const double n = h.n;
        const double c = std::cos(n * t);
        const double s = std::sin(n * t);
        const double even = h.a * c + h.b * s;
        const double odd = -h.a * s + h.b * c;
        d[0] += even;
        d[1] += n * odd;
        d[2] -= n * n * even;
        d[3] -= n * n * n * odd;
    }
    return d;
}

double TrigSeries::integral(double t) const {
    double v = mean_ * t;
    for (const auto& h : terms_) {
        v += h.a * sinc_term(h.n, t) + h.b * versin_term(h.n, t);
    }
    return v;
}

double TrigSeries::increment(double t0, double delta) const {
    double v = mean_ * delta;
    for (const auto& h : terms_) {
        const double c = std::cos(h.n * t0);
        const double s = std::sin(h.n * t0);
        const double a = h.a * c + h.b * s;
        const double b = -h.a * s + h.b * c;
        v += a * sinc_term(h.n, delta) + b * versin_term(h.n, delta);
    }
    return v;
}

TrigSeries TrigSeries::rotated(double t0) const {
    std::vector<Harmonic> out;
    out.reserve(terms_.size());
    for (const auto& h : terms_) {
        const double c = std::cos(h.n * t0);
        const double s = std::sin(h.n * t0);
        out.push_back({h.n, h.a * c + h.b * s, -h.a * s + h.b * c});
    }
    return TrigSeries(mean_, std::move(out));
}

TrigSeries TrigSeries::scaled(double factor) const {
    std::vector<Harmonic> out = terms_;
    for (auto& h : out) {
        h.a *= factor;
        h.b *= factor;
    }
    return TrigSeries(mean_ * factor, std::move(out));
}

TrigSeries TrigSeries::derivative() const {
    std::vector<Harmonic> out;
    out.reserve(terms_.size());
    for (const auto& h : terms_) out.push_back({h.n, h.n * h.b, -h.n * h.a});
    return TrigSeries(0.0, std::move(out));
}

}  // namespace lazlab
