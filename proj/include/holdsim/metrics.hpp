#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace holdsim {

/// Time window [start, end] in seconds.
struct Window {
    double start = 0.0;
    double end = 0.0;
};

namespace detail {

// Inclusive index range of samples with t0 + i*dt inside [w.start, w.end].
inline std::pair<std::size_t, std::size_t> window_indices(std::size_t n, double t0, double dt,
                                                          const Window& w) {
    if (n == 0 || w.end <= w.start) throw std::invalid_argument("invalid window");
    const double eps = 1e-9 * dt;
    const auto lo_d = std::ceil((w.start - t0) / dt - eps);
    const auto hi_d = std::floor((w.end - t0) / dt + eps);
    if (hi_d < 0.0 || lo_d > static_cast<double>(n - 1))
        throw std::invalid_argument("window outside trace");
    const std::size_t lo = lo_d < 0.0 ? 0 : static_cast<std::size_t>(lo_d);
    const std::size_t hi = std::min(static_cast<std::size_t>(hi_d), n - 1);
    if (hi < lo) throw std::invalid_argument("empty window");
    return {lo, hi};
}

inline std::pair<double, double> min_max(const std::vector<double>& v, std::size_t lo,
                                         std::size_t hi) {
    double mn = v[lo], mx = v[lo];
    for (std::size_t i = lo + 1; i <= hi; ++i) {
        mn = std::min(mn, v[i]);
        mx = std::max(mx, v[i]);
    }
    return {mn, mx};
}

}  // namespace detail

/// 100 * p2p(error) / p2p(reference) over the window. Both traces share the
/// uniform time base (t0, dt).
inline double peak_to_peak_percent(const std::vector<double>& error,
                                   const std::vector<double>& reference, double t0, double dt,
                                   const Window& w) {
    if (error.size() != reference.size())
        throw std::invalid_argument("peak_to_peak_percent: trace size mismatch");
    const auto [lo, hi] = detail::window_indices(error.size(), t0, dt, w);
    const auto [emin, emax] = detail::min_max(error, lo, hi);
    const auto [rmin, rmax] = detail::min_max(reference, lo, hi);
    if (rmax <= rmin) throw std::invalid_argument("peak_to_peak_percent: reference p2p is zero");
    return 100.0 * (emax - emin) / (rmax - rmin);
}

/// Magnitude DFT of the steady-state error over [start, end). Bins at
/// k / (end - start) Hz. Magnitudes optionally rescaled to percent of a
/// reference maximum (pass the reference run's raw max); otherwise percent
/// of this spectrum's own maximum, so the reference run peaks at exactly 100.
struct SpectrumResult {
    std::vector<double> freqs_hz;
    std::vector<double> magnitude;           // raw |E(f)| values
    std::vector<double> normalized_percent;  // 100 * magnitude / reference max
    double raw_max = 0.0;
};

inline SpectrumResult error_spectrum(const std::vector<double>& error, double t0, double dt,
                                     const Window& w, double trajectory_period,
                                     double reference_max = 0.0) {
    if (trajectory_period <= 0.0)
        throw std::invalid_argument("error_spectrum: trajectory period must be > 0");
    const double span = w.end - w.start;
    const double periods = span / trajectory_period;
    if (std::abs(periods - std::round(periods)) > 1e-6 || std::round(periods) < 1.0)
        throw std::invalid_argument(
            "error_spectrum: window must span an integer number of trajectory periods");

    // half-open window [start, end)
    const double eps = 1e-9 * dt;
    const auto lo_d = std::ceil((w.start - t0) / dt - eps);
    if (lo_d < 0.0 || lo_d > static_cast<double>(error.size()))
        throw std::invalid_argument("error_spectrum: window outside trace");
    const auto lo = static_cast<std::size_t>(lo_d);
    const auto count_d = std::round(span / dt);
    if (std::abs(count_d * dt - span) > 1e-6 * dt || lo + count_d > error.size())
        throw std::invalid_argument("error_spectrum: window not sample-aligned or outside trace");
    const auto N = static_cast<std::size_t>(count_d);

    SpectrumResult res;
    const std::size_t bins = N / 2 + 1;
    res.freqs_hz.resize(bins);
    res.magnitude.resize(bins);

    // Goertzel recurrence per bin
    for (std::size_t k = 0; k < bins; ++k) {
        const double wk = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(N);
        const double c = std::cos(wk);
        const double coeff = 2.0 * c;
        double s1 = 0.0, s2 = 0.0;
        for (std::size_t n = 0; n < N; ++n) {
            const double s0 = error[lo + n] + coeff * s1 - s2;
            s2 = s1;
            s1 = s0;
        }
        const double re = s1 - s2 * c;
        const double im = s2 * std::sin(wk);
        res.freqs_hz[k] = static_cast<double>(k) / (static_cast<double>(N) * dt);
        res.magnitude[k] = std::hypot(re, im);
    }
    res.raw_max = *std::max_element(res.magnitude.begin(), res.magnitude.end());
    const double base = reference_max > 0.0 ? reference_max : res.raw_max;
    res.normalized_percent.resize(bins);
    for (std::size_t k = 0; k < bins; ++k)
        res.normalized_percent[k] = base > 0.0 ? 100.0 * res.magnitude[k] / base : 0.0;
    return res;
}

}  // namespace holdsim
