#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "holdsim/control.hpp"
#include "holdsim/plant.hpp"
#include "holdsim/sensing.hpp"
#include "holdsim/simloop.hpp"

namespace holdsim {

class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat key=value experiment configuration. Every physical constant, gain
/// pole, cutoff, resolution and window is a key; file values and --set
/// overrides share one parser.
struct Config {
    // plant (Table-1 style constants)
    double m = 0.125;
    double l = 0.33;
    double g = 9.807;
    double J = 0.0042;
    double Ra = 3.4;
    double Kb = 0.0592;
    double Ki = 0.0592;
    double b = 0.0045;
    // trajectory
    double traj_amplitude_rad = 0.1;
    double traj_omega_rad_s = 4.0 * std::numbers::pi;
    // sensing
    double sample_period_s = 1e-3;
    double encoder_delta_rad = 2.0 * std::numbers::pi / 4000.0;
    std::string quantizer = "round";  // round | truncate
    double filter_cutoff_hz = 140.0;
    // control
    double pole_real = -15.0;
    double pole_imag = 10.0;
    // closed-loop run
    double duration_s = 10.0;
    double steady_start_s = 2.0;
    int substeps = 10;
    bool ideal_feedback = false;
    bool init_from_trajectory = true;
    double init_theta_rad = 0.0;
    double init_theta_dot_rad_s = 0.0;
    // open-loop run
    double eval_oversample = 10;
    // frequency-response grid
    int freq_points = 200;
    double freq_omega_min_rad_s = 0.1;
    double freq_omega_max_rad_s = std::numbers::pi / 1e-3;

    PendulumParams params() const { return {m, l, g, J, Ra, Kb, Ki, b}; }

    Trajectory trajectory() const { return {traj_amplitude_rad, traj_omega_rad_s}; }

    EncoderModel encoder() const { return {encoder_delta_rad, sample_period_s}; }

    QuantizerMode quantizer_mode() const {
        if (quantizer == "round") return QuantizerMode::RoundNearest;
        if (quantizer == "truncate") return QuantizerMode::Truncate;
        throw ConfigError("quantizer must be 'round' or 'truncate', got '" + quantizer + "'");
    }

    SensingScheme scheme(HoldType hold, bool filtered) const {
        return {hold, filtered, filter_cutoff_hz};
    }

    GainVec gains() const {
        const std::complex<double> p1(pole_real, pole_imag);
        return place_gains(build_model(params()), p1, std::conj(p1));
    }

    SimConfig sim_config(const SensingScheme& sch) const {
        SimConfig c;
        c.params = params();
        c.trajectory = trajectory();
        c.scheme = sch;
        c.encoder = encoder();
        c.quantizer = quantizer_mode();
        c.gains = gains();
        c.duration = duration_s;
        c.steady_start = steady_start_s;
        c.substeps = substeps;
        c.ideal_feedback = ideal_feedback;
        c.init_from_trajectory = init_from_trajectory;
        c.initial_state = {init_theta_rad, init_theta_dot_rad_s};
        return c;
    }

    void set(std::string_view key, std::string_view value);
    void load_file(const std::string& path);
    void apply_override(std::string_view key_eq_value);  // "key=value"
    void print(std::ostream& os) const;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double parse_double(std::string_view key, std::string_view v) {
    double out{};
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        throw ConfigError("invalid number for '" + std::string(key) + "': '" + std::string(v) + "'");
    return out;
}

inline int parse_int(std::string_view key, std::string_view v) {
    int out{};
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        throw ConfigError("invalid integer for '" + std::string(key) + "': '" + std::string(v) + "'");
    return out;
}

inline bool parse_bool(std::string_view key, std::string_view v) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError("invalid bool for '" + std::string(key) + "': '" + std::string(v) + "'");
}

inline std::string format_full(double v) {  // shortest round-trip form
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, p);
}

}  // namespace detail

inline void Config::set(std::string_view key, std::string_view value) {
    using detail::parse_bool;
    using detail::parse_double;
    using detail::parse_int;
    if (key == "m") m = parse_double(key, value);
    else if (key == "l") l = parse_double(key, value);
    else if (key == "g") g = parse_double(key, value);
    else if (key == "J") J = parse_double(key, value);
    else if (key == "Ra") Ra = parse_double(key, value);
    else if (key == "Kb") Kb = parse_double(key, value);
    else if (key == "Ki") Ki = parse_double(key, value);
    else if (key == "b") b = parse_double(key, value);
    else if (key == "traj_amplitude_rad") traj_amplitude_rad = parse_double(key, value);
    else if (key == "traj_omega_rad_s") traj_omega_rad_s = parse_double(key, value);
    else if (key == "sample_period_s") sample_period_s = parse_double(key, value);
    else if (key == "encoder_delta_rad") encoder_delta_rad = parse_double(key, value);
    else if (key == "quantizer") quantizer = std::string(value);
    else if (key == "filter_cutoff_hz") filter_cutoff_hz = parse_double(key, value);
    else if (key == "pole_real") pole_real = parse_double(key, value);
    else if (key == "pole_imag") pole_imag = parse_double(key, value);
    else if (key == "duration_s") duration_s = parse_double(key, value);
    else if (key == "steady_start_s") steady_start_s = parse_double(key, value);
    else if (key == "substeps") substeps = parse_int(key, value);
    else if (key == "ideal_feedback") ideal_feedback = parse_bool(key, value);
    else if (key == "init_from_trajectory") init_from_trajectory = parse_bool(key, value);
    else if (key == "init_theta_rad") init_theta_rad = parse_double(key, value);
    else if (key == "init_theta_dot_rad_s") init_theta_dot_rad_s = parse_double(key, value);
    else if (key == "eval_oversample") eval_oversample = parse_double(key, value);
    else if (key == "freq_points") freq_points = parse_int(key, value);
    else if (key == "freq_omega_min_rad_s") freq_omega_min_rad_s = parse_double(key, value);
    else if (key == "freq_omega_max_rad_s") freq_omega_max_rad_s = parse_double(key, value);
    else throw ConfigError("unknown config key '" + std::string(key) + "'");
}

inline void Config::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto sv = detail::trim(line);
        if (sv.empty()) continue;
        const auto eq = sv.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        try {
            set(detail::trim(sv.substr(0, eq)), detail::trim(sv.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

inline void Config::apply_override(std::string_view kv) {
    const auto eq = kv.find('=');
    if (eq == std::string_view::npos)
        throw ConfigError("--set expects key=value, got '" + std::string(kv) + "'");
    set(detail::trim(kv.substr(0, eq)), detail::trim(kv.substr(eq + 1)));
}

inline void Config::print(std::ostream& os) const {
    using detail::format_full;
    os << "# plant\n";
    os << "m = " << format_full(m) << "\n";
    os << "l = " << format_full(l) << "\n";
    os << "g = " << format_full(g) << "\n";
    os << "J = " << format_full(J) << "\n";
    os << "Ra = " << format_full(Ra) << "\n";
    os << "Kb = " << format_full(Kb) << "\n";
    os << "Ki = " << format_full(Ki) << "\n";
    os << "b = " << format_full(b) << "\n";
    os << "# trajectory\n";
    os << "traj_amplitude_rad = " << format_full(traj_amplitude_rad) << "\n";
    os << "traj_omega_rad_s = " << format_full(traj_omega_rad_s) << "\n";
    os << "# sensing\n";
    os << "sample_period_s = " << format_full(sample_period_s) << "\n";
    os << "encoder_delta_rad = " << format_full(encoder_delta_rad) << "\n";
    os << "quantizer = " << quantizer << "\n";
    os << "filter_cutoff_hz = " << format_full(filter_cutoff_hz) << "\n";
    os << "# control\n";
    os << "pole_real = " << format_full(pole_real) << "\n";
    os << "pole_imag = " << format_full(pole_imag) << "\n";
    os << "# closed-loop run\n";
    os << "duration_s = " << format_full(duration_s) << "\n";
    os << "steady_start_s = " << format_full(steady_start_s) << "\n";
    os << "substeps = " << substeps << "\n";
    os << "ideal_feedback = " << (ideal_feedback ? "true" : "false") << "\n";
    os << "init_from_trajectory = " << (init_from_trajectory ? "true" : "false") << "\n";
    os << "init_theta_rad = " << format_full(init_theta_rad) << "\n";
    os << "init_theta_dot_rad_s = " << format_full(init_theta_dot_rad_s) << "\n";
    os << "# open-loop run\n";
    os << "eval_oversample = " << format_full(eval_oversample) << "\n";
    os << "# frequency-response grid\n";
    os << "freq_points = " << freq_points << "\n";
    os << "freq_omega_min_rad_s = " << format_full(freq_omega_min_rad_s) << "\n";
    os << "freq_omega_max_rad_s = " << format_full(freq_omega_max_rad_s) << "\n";
}

}  // namespace holdsim
