#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "holdsim/config.hpp"
#include "holdsim/csv.hpp"
#include "holdsim/freq_response.hpp"
#include "holdsim/metrics.hpp"
#include "holdsim/simloop.hpp"

namespace holdsim::cli {

// exit codes
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 1;
inline constexpr int kOrderingFailure = 2;
inline constexpr int kDivergence = 3;

inline const std::vector<std::string>& all_scheme_names() {
    static const std::vector<std::string> names = {"ZOH", "FOH", "ZOH+Filter", "FOH+Filter"};
    return names;
}

inline SensingScheme scheme_by_name(const Config& cfg, const std::string& name) {
    std::string k;
    for (char c : name) k += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (k == "zoh") return cfg.scheme(HoldType::Zoh, false);
    if (k == "foh") return cfg.scheme(HoldType::Foh, false);
    if (k == "zoh+filter") return cfg.scheme(HoldType::Zoh, true);
    if (k == "foh+filter") return cfg.scheme(HoldType::Foh, true);
    throw ConfigError("unknown scheme '" + name + "' (expected ZOH, FOH, ZOH+Filter, FOH+Filter)");
}

/// Canonically ordered subset of the four schemes from a comma list;
/// empty selector means all four.
inline std::vector<std::string> parse_scheme_list(const std::string& selector) {
    if (selector.empty()) return all_scheme_names();
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        std::string k;
        for (char c : cur) k += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (k.empty()) return;
        for (const auto& canon : all_scheme_names()) {
            std::string lc;
            for (char c : canon) lc += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            if (k == lc) {
                if (std::find(out.begin(), out.end(), canon) == out.end()) out.push_back(canon);
                return;
            }
        }
        throw ConfigError("unknown scheme '" + cur + "'");
    };
    for (char c : selector) {
        if (c == ',') { flush(); cur.clear(); }
        else cur += c;
    }
    flush();
    if (out.empty()) throw ConfigError("--schemes selected no schemes");
    // canonical emission order
    std::vector<std::string> ordered;
    for (const auto& canon : all_scheme_names())
        if (std::find(out.begin(), out.end(), canon) != out.end()) ordered.push_back(canon);
    return ordered;
}

inline std::string trace_file_name(const std::string& scheme) {
    std::string s = "traces_";
    for (char c : scheme) {
        if (c == '+') s += '_';
        else s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return s + ".csv";
}

inline int cmd_freq_response(const Config& cfg, const std::filesystem::path& out_dir,
                             std::ostream& console) {
    const double T = cfg.sample_period_s;
    const double nyq_omega = std::numbers::pi / T;
    if (cfg.freq_omega_min_rad_s <= 0.0 || cfg.freq_omega_max_rad_s > nyq_omega * (1.0 + 1e-12) ||
        cfg.freq_omega_min_rad_s > cfg.freq_omega_max_rad_s || cfg.freq_points < 1) {
        console << "freq-response: omega range must lie within (0, pi/T]\n";
        return kUsageError;
    }
    CsvWriter csv((out_dir / "freq_response.csv").string());
    csv.row({"omega_rad_s", "zoh_mag", "zoh_phase_rad", "foh_mag", "foh_phase_rad"});
    const int n = cfg.freq_points;
    for (int i = 0; i < n; ++i) {
        const double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
        const double omega =
            cfg.freq_omega_min_rad_s * std::pow(cfg.freq_omega_max_rad_s / cfg.freq_omega_min_rad_s, f);
        const auto z = zoh_response(omega, T);
        const auto h = foh_response(omega, T);
        csv.row({csv_double(omega), csv_double(z.magnitude), csv_double(z.phase),
                 csv_double(h.magnitude), csv_double(h.phase)});
    }
    const double omega_sig = cfg.traj_omega_rad_s;
    const auto z = zoh_response(omega_sig, T);
    const auto h = foh_response(omega_sig, T);
    char line[256];
    std::snprintf(line, sizeof(line),
                  "at omega = %.6g rad/s (%.4g Hz): ZOH mag %.6f phase %.3e rad, "
                  "FOH mag %.6f phase %.3e rad\n",
                  omega_sig, omega_sig / (2.0 * std::numbers::pi), z.magnitude, z.phase,
                  h.magnitude, h.phase);
    console << line;
    return kOk;
}

inline int cmd_table2(const Config& cfg, const std::filesystem::path& out_dir,
                      std::ostream& console, const std::vector<std::string>& schemes) {
    std::map<std::string, double> p2p;
    const Window w{cfg.steady_start_s, cfg.duration_s};
    for (const auto& name : schemes) {
        const auto sch = scheme_by_name(cfg, name);
        const auto r = run_open_loop_sensing(sch, cfg.encoder(), cfg.trajectory(), cfg.duration_s,
                                             static_cast<int>(cfg.eval_oversample),
                                             cfg.quantizer_mode());
        p2p[name] = peak_to_peak_percent(r.error(), r.input, r.t.front(), r.dt, w);
    }
    CsvWriter csv((out_dir / "table2.csv").string());
    csv.row({"scheme", "p2p_error_percent"});
    console << "open-loop sensing p2p error (% of input p2p):\n";
    for (const auto& name : schemes) {
        csv.row({name, csv_double(p2p[name])});
        char line[128];
        std::snprintf(line, sizeof(line), "  %-12s %.4f\n", name.c_str(), p2p[name]);
        console << line;
    }
    if (schemes.size() == all_scheme_names().size()) {
        const bool ordered = p2p["ZOH"] > p2p["FOH"] && p2p["FOH"] > p2p["ZOH+Filter"] &&
                             p2p["ZOH+Filter"] > p2p["FOH+Filter"];
        if (!ordered) {
            console << "ordering ZOH > FOH > ZOH+Filter > FOH+Filter VIOLATED\n";
            return kOrderingFailure;
        }
        console << "ordering ZOH > FOH > ZOH+Filter > FOH+Filter holds\n";
    }
    return kOk;
}

inline void write_traces(const SimResult& r, const std::filesystem::path& path) {
    CsvWriter csv(path.string());
    csv.row({"t", "theta_d", "theta_true", "theta_hat", "error", "va"});
    for (std::size_t i = 0; i < r.size(); ++i)
        csv.row({csv_double(r.t[i]), csv_double(r.theta_d[i]), csv_double(r.theta_true[i]),
                 csv_double(r.theta_hat[i]), csv_double(r.theta_d[i] - r.theta_true[i]),
                 csv_double(r.va[i])});
}

inline int cmd_table3(const Config& cfg, const std::filesystem::path& out_dir,
                      std::ostream& console, const std::vector<std::string>& schemes) {
    std::map<std::string, double> p2p;
    const Window w{cfg.steady_start_s, cfg.duration_s};
    for (const auto& name : schemes) {
        const auto sch = scheme_by_name(cfg, name);
        SimResult r;
        try {
            r = run_closed_loop(cfg.sim_config(sch));
        } catch (const DivergenceError& e) {
            console << e.what() << "\n";
            return kDivergence;
        }
        p2p[name] = peak_to_peak_percent(r.measured_error(), r.theta_d, r.t.front(),
                                         r.sample_period, w);
        write_traces(r, out_dir / trace_file_name(name));
    }
    CsvWriter csv((out_dir / "table3.csv").string());
    csv.row({"scheme", "closed_loop_p2p_percent"});
    console << "closed-loop tracking p2p error (% of reference p2p):\n";
    for (const auto& name : schemes) {
        csv.row({name, csv_double(p2p[name])});
        char line[128];
        std::snprintf(line, sizeof(line), "  %-12s %.4f\n", name.c_str(), p2p[name]);
        console << line;
    }
    if (schemes.size() == all_scheme_names().size()) {
        const bool ordered = p2p["ZOH"] > p2p["FOH"] && p2p["FOH"] > p2p["ZOH+Filter"] &&
                             p2p["ZOH+Filter"] > p2p["FOH+Filter"];
        const double improvement = 100.0 * (p2p["ZOH"] - p2p["FOH"]) / p2p["ZOH"];
        char line[128];
        std::snprintf(line, sizeof(line), "FOH improvement over ZOH: %.1f%%\n", improvement);
        console << line;
        if (!ordered) {
            console << "ordering ZOH > FOH > ZOH+Filter > FOH+Filter VIOLATED\n";
            return kOrderingFailure;
        }
        console << "ordering ZOH > FOH > ZOH+Filter > FOH+Filter holds\n";
    }
    return kOk;
}

inline int cmd_spectrum(const Config& cfg, const std::filesystem::path& out_dir,
                        std::ostream& console) {
    const double period = cfg.trajectory().period();
    const double n_per = std::floor((cfg.duration_s - cfg.steady_start_s) / period + 1e-9);
    const Window w{cfg.steady_start_s, cfg.steady_start_s + n_per * period};

    SimResult rz, rf;
    try {
        rz = run_closed_loop(cfg.sim_config(cfg.scheme(HoldType::Zoh, false)));
        rf = run_closed_loop(cfg.sim_config(cfg.scheme(HoldType::Foh, false)));
    } catch (const DivergenceError& e) {
        console << e.what() << "\n";
        return kDivergence;
    }
    const auto sz = error_spectrum(rz.measured_error(), rz.t.front(), rz.sample_period, w, period);
    const auto sf = error_spectrum(rf.measured_error(), rf.t.front(), rf.sample_period, w, period,
                                   sz.raw_max);

    CsvWriter csv((out_dir / "spectrum.csv").string());
    csv.row({"freq_hz", "zoh_pct", "foh_pct"});
    for (std::size_t k = 0; k < sz.freqs_hz.size(); ++k)
        csv.row({csv_double(sz.freqs_hz[k]), csv_double(sz.normalized_percent[k]),
                 csv_double(sf.normalized_percent[k])});

    const double f_sig = cfg.traj_omega_rad_s / (2.0 * std::numbers::pi);
    const double df = 1.0 / (w.end - w.start);
    const auto k_sig = static_cast<std::size_t>(std::llround(f_sig / df));
    const double suppression =
        100.0 * (sz.magnitude[k_sig] - sf.magnitude[k_sig]) / sz.magnitude[k_sig];
    char line[160];
    std::snprintf(line, sizeof(line),
                  "%.4g Hz error bin: ZOH %.2f%%, FOH %.2f%% (of ZOH max) -> suppressed by %.1f%%\n",
                  f_sig, sz.normalized_percent[k_sig], sf.normalized_percent[k_sig], suppression);
    console << line;
    return kOk;
}

}  // namespace holdsim::cli
