#pragma once

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "holdsim/cli.hpp"

namespace holdsim::cli {

/// Full command-line front end. Returns the process exit code.
inline int run_cli(const std::vector<std::string>& args, std::ostream& console = std::cout) {
    CLI::App app{"hold-reconstruction tracking study"};
    app.require_subcommand(0, 1);
    app.fallthrough();  // allow global flags after the subcommand name

    std::string config_path;
    std::string out_dir = "out";
    std::vector<std::string> overrides;
    std::string scheme_selector;
    bool print_config = false;

    app.add_option("--config", config_path, "key=value config file");
    app.add_option("--out", out_dir, "output directory for CSV artifacts");
    app.add_option("--set", overrides, "override one config key, e.g. --set filter_cutoff_hz=100");
    app.add_option("--schemes", scheme_selector, "comma list of ZOH,FOH,ZOH+Filter,FOH+Filter");
    app.add_flag("--print-config", print_config, "print the effective configuration and exit");

    auto* sc_freq = app.add_subcommand("freq-response", "hold filter magnitude/phase grid");
    auto* sc_open = app.add_subcommand("open-loop", "open-loop sensing comparison");
    auto* sc_closed = app.add_subcommand("closed-loop", "closed-loop tracking comparison");
    auto* sc_spec = app.add_subcommand("spectrum", "DFT of the steady-state tracking error");
    auto* sc_all = app.add_subcommand("all", "run every scenario");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("holdsim");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, console, console);
        return rc == 0 ? kOk : kUsageError;
    }

    Config cfg;
    try {
        if (!config_path.empty()) cfg.load_file(config_path);
        for (const auto& kv : overrides) cfg.apply_override(kv);
        if (print_config) {
            cfg.print(console);
            if (app.get_subcommands().empty()) return kOk;
        }
        if (app.get_subcommands().empty()) {
            console << "no scenario given (expected freq-response | open-loop | closed-loop | "
                       "spectrum | all)\n";
            return kUsageError;
        }
        const auto schemes = parse_scheme_list(scheme_selector);
        std::filesystem::create_directories(out_dir);
        const std::filesystem::path out(out_dir);

        int rc = kOk;
        auto merge = [&rc](int code) { rc = std::max(rc, code); };
        if (sc_freq->parsed()) merge(cmd_freq_response(cfg, out, console));
        if (sc_open->parsed()) merge(cmd_table2(cfg, out, console, schemes));
        if (sc_closed->parsed()) merge(cmd_table3(cfg, out, console, schemes));
        if (sc_spec->parsed()) merge(cmd_spectrum(cfg, out, console));
        if (sc_all->parsed()) {
            merge(cmd_freq_response(cfg, out, console));
            merge(cmd_table2(cfg, out, console, schemes));
            merge(cmd_table3(cfg, out, console, schemes));
            merge(cmd_spectrum(cfg, out, console));
        }
        return rc;
    } catch (const ConfigError& e) {
        console << "config error: " << e.what() << "\n";
        return kUsageError;
    } catch (const DivergenceError& e) {
        console << e.what() << "\n";
        return kDivergence;
    } catch (const std::invalid_argument& e) {
        console << "invalid parameter: " << e.what() << "\n";
        return kUsageError;
    }
}

}  // namespace holdsim::cli
