#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace holdsim {

/// Second-order difference-equation filter, direct form II transposed.
/// Coefficients are normalized (a0 = 1).
struct Biquad {
    double b0 = 1.0, b1 = 0.0, b2 = 0.0;
    double a1 = 0.0, a2 = 0.0;
    double z1 = 0.0, z2 = 0.0;

    /// Advance one sample; mutates the delay states.
    double step(double x) {
        const double y = b0 * x + z1;
        z1 = b1 * x - a1 * y + z2;
        z2 = b2 * x - a2 * y;
        return y;
    }

    void reset() { z1 = z2 = 0.0; }

    double dc_gain() const { return (b0 + b1 + b2) / (1.0 + a1 + a2); }

    /// Both poles strictly inside the unit circle.
    bool is_stable() const {
        return std::abs(a2) < 1.0 && std::abs(a1) < 1.0 + a2;
    }
};

/// Second-order Butterworth low-pass, bilinear transform with frequency
/// prewarping at the cutoff. Unity DC gain.
inline Biquad make_lowpass2(double cutoff_hz, double sample_rate_hz) {
    if (cutoff_hz <= 0.0 || sample_rate_hz <= 0.0 || cutoff_hz >= 0.5 * sample_rate_hz)
        throw std::invalid_argument("make_lowpass2: need 0 < cutoff < sample_rate / 2");
    const double K = 2.0 * sample_rate_hz;
    const double wa = K * std::tan(std::numbers::pi * cutoff_hz / sample_rate_hz);
    const double s2 = std::sqrt(2.0);
    const double a0 = K * K + s2 * wa * K + wa * wa;
    Biquad f;
    f.b0 = wa * wa / a0;
    f.b1 = 2.0 * wa * wa / a0;
    f.b2 = wa * wa / a0;
    f.a1 = (2.0 * wa * wa - 2.0 * K * K) / a0;
    f.a2 = (K * K - s2 * wa * K + wa * wa) / a0;
    return f;
}

/// Forward-backward (zero-phase) application of a biquad to a whole trace.
/// Filter states start at zero for both passes.
inline std::vector<double> zero_phase_filter(const Biquad& design, const std::vector<double>& x) {
    Biquad f = design;
    f.reset();
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = f.step(x[i]);
    f.reset();
    // backward pass: stepping the trace in reverse index order applies the
    // filter to the time-reversed signal and stores it already re-reversed
    for (std::size_t i = y.size(); i-- > 0;) y[i] = f.step(y[i]);
    return y;
}

}  // namespace holdsim
