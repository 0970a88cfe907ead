#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace holdsim {

/// Electro-mechanical constants of the motor-pendulum assembly.
/// Defaults are the identified values of the experimental rig.
struct PendulumParams {
    double m = 0.125;    // pendulum mass, kg
    double l = 0.33;     // pendulum length, m
    double g = 9.807;    // gravitational constant, m/s^2
    double J = 0.0042;   // rotational inertia, kg m^2
    double Ra = 3.4;     // armature resistance, ohm
    double Kb = 0.0592;  // back-emf constant, V s/rad
    double Ki = 0.0592;  // torque constant, N m/A
    double b = 0.0045;   // torsional damping, N m s/rad

    bool valid() const {
        return m > 0 && l > 0 && g > 0 && J > 0 && Ra > 0 && Kb > 0 && Ki > 0 && b > 0;
    }
};

/// Linearized second-order model x_dot = A x + B Va with companion-form A.
/// Only the non-trivial entries are stored: A = [[0, 1], [a_theta, a_rate]],
/// B = [0, b_va].
struct LtiModel {
    double a_theta = 0.0;  // d(theta_ddot)/d(theta), 1/s^2
    double a_rate = 0.0;   // d(theta_ddot)/d(theta_dot), 1/s
    double b_va = 0.0;     // d(theta_ddot)/d(Va), rad/(s^2 V)

    /// Undamped natural frequency of the gravity term, Hz.
    double natural_frequency_hz() const {
        return std::sqrt(-a_theta) / (2.0 * std::numbers::pi);
    }
};

struct State {
    double theta = 0.0;      // rad
    double theta_dot = 0.0;  // rad/s
};

inline LtiModel build_model(const PendulumParams& p) {
    if (!p.valid()) throw std::invalid_argument("build_model: parameters must be positive");
    LtiModel m;
    m.a_theta = -p.m * p.g * p.l / (2.0 * p.J);
    m.a_rate = -(p.b + p.Kb * p.Ki / p.Ra) / p.J;
    m.b_va = p.Ki / (p.Ra * p.J);
    return m;
}

namespace detail {

struct Deriv {
    double d_theta, d_rate;
};

inline Deriv dynamics(const LtiModel& m, double theta, double rate, double va) {
    return {rate, m.a_theta * theta + m.a_rate * rate + m.b_va * va};
}

}  // namespace detail

/// One classical RK4 step of x_dot = A x + B Va with Va held constant over dt.
inline State rk4_step(const LtiModel& m, const State& x, double va, double dt) {
    using detail::dynamics;
    const auto k1 = dynamics(m, x.theta, x.theta_dot, va);
    const auto k2 = dynamics(m, x.theta + 0.5 * dt * k1.d_theta, x.theta_dot + 0.5 * dt * k1.d_rate, va);
    const auto k3 = dynamics(m, x.theta + 0.5 * dt * k2.d_theta, x.theta_dot + 0.5 * dt * k2.d_rate, va);
    const auto k4 = dynamics(m, x.theta + dt * k3.d_theta, x.theta_dot + dt * k3.d_rate, va);
    return {x.theta + dt / 6.0 * (k1.d_theta + 2.0 * k2.d_theta + 2.0 * k3.d_theta + k4.d_theta),
            x.theta_dot + dt / 6.0 * (k1.d_rate + 2.0 * k2.d_rate + 2.0 * k3.d_rate + k4.d_rate)};
}

}  // namespace holdsim
