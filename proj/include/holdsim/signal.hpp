#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace holdsim {

/// Triangular convolution kernel: tri(t) = max(1 - |t|, 0).
inline double tri(double t) { return std::max(1.0 - std::abs(t), 0.0); }

/// Rectangular convolution kernel: 1 inside |t| < 1/2, 1/2 on the edge, 0 outside.
inline double rect(double t) {
    const double a = std::abs(t);
    if (a > 0.5) return 0.0;
    if (a < 0.5) return 1.0;
    return 0.5;
}

/// Uniformly sampled sequence: sample n corresponds to start_time + n * period.
struct SampleSeq {
    double period = 1.0;
    double start_time = 0.0;
    std::vector<double> values;

    SampleSeq() = default;
    SampleSeq(double T, double t0, std::vector<double> v)
        : period(T), start_time(t0), values(std::move(v)) {
        if (period <= 0.0) throw std::invalid_argument("SampleSeq: period must be > 0");
    }

    double time_of(std::size_t n) const { return start_time + static_cast<double>(n) * period; }
    double last_time() const {
        return start_time + static_cast<double>(values.size() - 1) * period;
    }
};

namespace detail {

inline void require_nonempty(const SampleSeq& s) {
    if (s.values.empty()) throw std::out_of_range("reconstruction query on empty sequence");
}

// Index of the half-open interval [nT, (n+1)T) containing t, relative to start_time.
inline std::size_t interval_index(const SampleSeq& s, double t) {
    require_nonempty(s);
    const double rel = t - s.start_time;
    if (rel < 0.0 || t > s.last_time())
        throw std::out_of_range("reconstruction query at t=" + std::to_string(t) +
                                " outside sampled span");
    auto n = static_cast<std::size_t>(std::floor(rel / s.period));
    if (n >= s.values.size()) n = s.values.size() - 1;  // t exactly at the last sample
    return n;
}

}  // namespace detail

/// Zero-order hold: holds x[n] over [nT, (n+1)T). Half-open intervals, so the
/// rect boundary value 1/2 is never realized.
inline double zoh_value(const SampleSeq& s, double t) {
    return s.values[detail::interval_index(s, t)];
}

/// Causal (extrapolative) first-order hold: over [nT, (n+1)T) extends x[n]
/// with the previous interval's slope. The first interval has no prior slope
/// and reproduces x[0].
inline double foh_causal_value(const SampleSeq& s, double t) {
    const std::size_t n = detail::interval_index(s, t);
    if (n == 0) return s.values[0];
    const double tau = t - s.time_of(n);
    const double slope = (s.values[n] - s.values[n - 1]) / s.period;
    return s.values[n] + slope * tau;
}

/// Delayed first-order hold (Fig. 2 style): piecewise-linear interpolation
/// between x[n-1] and x[n] over [nT, (n+1)T), i.e. the non-causal FOH output
/// delayed by one sample period.
inline double foh_delayed_value(const SampleSeq& s, double t) {
    detail::require_nonempty(s);
    if (t < s.start_time + s.period)
        throw std::out_of_range("delayed FOH query before start_time + period");
    const std::size_t n = detail::interval_index(s, t);
    if (n == 0) return s.values[0];
    const double tau = t - s.time_of(n);
    const double a = s.values[n - 1];
    const double b = s.values[n];
    return a + (b - a) * tau / s.period;
}

/// Non-causal first-order hold: linear interpolation through all samples.
/// Physically unrealizable in real time; reference reconstructor.
inline double foh_noncausal_value(const SampleSeq& s, double t) {
    const std::size_t n = detail::interval_index(s, t);
    if (n + 1 >= s.values.size()) return s.values.back();
    const double tau = t - s.time_of(n);
    const double a = s.values[n];
    const double b = s.values[n + 1];
    return a + (b - a) * tau / s.period;
}

}  // namespace holdsim
