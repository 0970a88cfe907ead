#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "holdsim/plant.hpp"

namespace holdsim {

/// Sinusoidal reference theta_d = amplitude * sin(omega t).
struct Trajectory {
    double amplitude = 0.1;                       // rad
    double omega = 4.0 * std::numbers::pi;        // rad/s (2 Hz)

    double period() const { return 2.0 * std::numbers::pi / omega; }
};

struct TrajectoryPoint {
    double theta_d;       // rad
    double theta_d_dot;   // rad/s
    double theta_d_ddot;  // rad/s^2
};

inline TrajectoryPoint traj_eval(const Trajectory& tr, double t) {
    const double s = std::sin(tr.omega * t);
    const double c = std::cos(tr.omega * t);
    return {tr.amplitude * s, tr.amplitude * tr.omega * c,
            -tr.amplitude * tr.omega * tr.omega * s};
}

/// Feed-forward voltage inverting the linear model along the reference:
/// Vd = (Ra J / Ki) (theta_ddot_d + ((b + Kb Ki / Ra)/J) theta_dot_d + (m g l / 2J) theta_d).
inline double feedforward_voltage(const PendulumParams& p, const TrajectoryPoint& d) {
    if (!p.valid()) throw std::invalid_argument("feedforward_voltage: invalid parameters");
    const double damp = (p.b + p.Kb * p.Ki / p.Ra) / p.J;
    const double grav = p.m * p.g * p.l / (2.0 * p.J);
    return (p.Ra * p.J / p.Ki) * (d.theta_d_ddot + damp * d.theta_d_dot + grav * d.theta_d);
}

struct GainVec {
    double k_theta = 0.0;      // V/rad
    double k_theta_dot = 0.0;  // V s/rad
};

struct ErrorState {
    double e_theta = 0.0;      // rad
    double e_theta_dot = 0.0;  // rad/s
};

/// u = -K e. The applied voltage is Va = Vd - u.
inline double feedback_control(const GainVec& k, const ErrorState& e) {
    return -(k.k_theta * e.e_theta + k.k_theta_dot * e.e_theta_dot);
}

/// Closed-loop eigenvalues of A - B K for the companion-form model.
inline std::pair<std::complex<double>, std::complex<double>>
closed_loop_poles(const LtiModel& m, const GainVec& k) {
    // char poly: s^2 + c1 s + c0
    const double c1 = -m.a_rate + m.b_va * k.k_theta_dot;
    const double c0 = -m.a_theta + m.b_va * k.k_theta;
    const std::complex<double> disc = std::sqrt(std::complex<double>(c1 * c1 - 4.0 * c0, 0.0));
    return {(-c1 + disc) / 2.0, (-c1 - disc) / 2.0};
}

inline bool is_hurwitz(const LtiModel& m, const GainVec& k) {
    auto [p1, p2] = closed_loop_poles(m, k);
    return p1.real() < 0.0 && p2.real() < 0.0;
}

/// Pole placement for the 2x2 companion form: match the characteristic
/// polynomial (s - p1)(s - p2) coefficient by coefficient.
inline GainVec place_gains(const LtiModel& m, std::complex<double> p1, std::complex<double> p2) {
    if (m.b_va == 0.0) throw std::invalid_argument("place_gains: model not reachable (b_va = 0)");
    if (p1.real() >= 0.0 || p2.real() >= 0.0)
        throw std::invalid_argument("place_gains: poles must have negative real parts");
    const std::complex<double> sum = p1 + p2;
    const std::complex<double> prod = p1 * p2;
    constexpr double imag_tol = 1e-9;
    if (std::abs(sum.imag()) > imag_tol * (1.0 + std::abs(sum)) ||
        std::abs(prod.imag()) > imag_tol * (1.0 + std::abs(prod)))
        throw std::invalid_argument("place_gains: complex poles must be a conjugate pair");
    const double c1 = -sum.real();   // desired s^1 coefficient
    const double c0 = prod.real();   // desired s^0 coefficient
    GainVec k;
    k.k_theta = (c0 + m.a_theta) / m.b_va;
    k.k_theta_dot = (c1 + m.a_rate) / m.b_va;
    return k;
}

/// Backward difference of the reconstructed angle.
inline double estimate_velocity(double theta_hat_now, double theta_hat_prev, double T) {
    if (T <= 0.0) throw std::invalid_argument("estimate_velocity: T must be > 0");
    return (theta_hat_now - theta_hat_prev) / T;
}

}  // namespace holdsim
