#pragma once

#include <cmath>
#include <stdexcept>

namespace holdsim {

/// Gain (normalized so an ideal unit-gain hold gives 1) and phase in radians.
struct FreqResponse {
    double magnitude = 1.0;
    double phase = 0.0;
};

namespace detail {

inline double sinc_half(double x) {  // sin(x/2)/(x/2), stable near 0
    const double h = 0.5 * x;
    if (std::abs(h) < 1e-8) return 1.0 - h * h / 6.0;
    return std::sin(h) / h;
}

inline void require_positive(double omega, double T) {
    if (omega <= 0.0 || T <= 0.0)
        throw std::invalid_argument("frequency response requires omega > 0 and T > 0");
}

}  // namespace detail

/// ZOH transfer function (1 - e^{-jwT}) / (jwT):
/// magnitude |sin(wT/2)/(wT/2)|, phase -wT/2.
inline FreqResponse zoh_response(double omega, double T) {
    detail::require_positive(omega, T);
    const double x = omega * T;
    return {std::abs(detail::sinc_half(x)), -0.5 * x};
}

/// Extrapolative FOH transfer function (1 + jwT) * [(1 - e^{-jwT}) / (jwT)]^2:
/// magnitude sqrt(1 + (wT)^2) * (sin(wT/2)/(wT/2))^2, phase atan(wT) - wT.
inline FreqResponse foh_response(double omega, double T) {
    detail::require_positive(omega, T);
    const double x = omega * T;
    const double s = detail::sinc_half(x);
    return {std::sqrt(1.0 + x * x) * s * s, std::atan(x) - x};
}

}  // namespace holdsim
