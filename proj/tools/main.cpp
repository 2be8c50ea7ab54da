// Command-line driver: generic config runs, figure presets and config
// validation with sweep output written as CSV plus a JSON manifest.
#include <algorithm>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "optocool/sweep.hpp"
#include "optocool/version.hpp"

namespace {

using namespace optocool;

struct CommonFlags {
    std::string out;
    std::string method;
    int points = 0;
    std::string truncation;
    int workers = 0;
};

void apply_flags(RunConfig& cfg, const CommonFlags& fl) {
    if (!fl.out.empty()) cfg.output.directory = fl.out;
    if (!fl.method.empty()) cfg.solver.method = method_from_string(fl.method);
    if (!fl.truncation.empty()) {
        std::vector<int> tr;
        std::string tok;
        for (char c : fl.truncation + ",") {
            if (c == ',') {
                if (!tok.empty()) tr.push_back(std::stoi(tok));
                tok.clear();
            } else {
                tok += c;
            }
        }
        cfg.solver.truncations = tr;
    }
    if (fl.points > 0 && cfg.sweep) {
        auto& sw = *cfg.sweep;
        const double lo = *std::min_element(sw.values.begin(), sw.values.end());
        const double hi = *std::max_element(sw.values.begin(), sw.values.end());
        if (sw.parameter == "time") {
            sw.values = linspace(0.0, hi, fl.points);
        } else if (lo > 0.0 && hi / lo > 10.0) {
            sw.values = logspace(lo, hi, fl.points);
        } else {
            sw.values = linspace(lo, hi, fl.points);
        }
    }
    validate_config(cfg);
}

// 0 ok, 2 full failure, 3 partial failure
int run_configs(std::vector<RunConfig> configs, const CommonFlags& fl) {
    int rc = 0;
    for (auto& cfg : configs) {
        apply_flags(cfg, fl);
        for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << "\n";
        SweepResult result;
        try {
            result = run_sweep(cfg, fl.workers);
        } catch (const std::runtime_error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
        const auto paths = emit(result, cfg);
        if (!paths.csv.empty()) std::cout << "wrote " << paths.csv << "\n";
        if (!paths.json.empty()) std::cout << "wrote " << paths.json << "\n";
        if (result.failed_count() > 0) {
            std::cerr << "warning: " << result.failed_count() << "/" << result.points.size()
                      << " points failed (causes recorded in the output)\n";
            rc = 3;
        }
    }
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(kToolName) +
                 " - filtered-thermal-bath optomechanical cooling simulator"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);

    CommonFlags fl;
    std::string config_path;
    std::string preset_name;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", fl.out, "output directory (overrides config)");
        sub->add_option("--method", fl.method,
                        "solver method: analytic|reduced-ode|joint-steady-state|joint-evolve");
        sub->add_option("--points", fl.points, "resample the sweep to this many points");
        sub->add_option("--truncation", fl.truncation,
                        "comma-separated Fock dimensions, optical first (e.g. 7,70)");
        sub->add_option("--workers", fl.workers, "concurrent sweep workers (default: cores)");
    };

    CLI::App* run = app.add_subcommand("run", "run a sweep from a config file");
    run->add_option("--config", config_path, "config file")->required();
    add_common(run);

    CLI::App* preset = app.add_subcommand("preset", "run a built-in figure preset");
    preset->add_option("name", preset_name, "fig2|fig3a|fig3b|fig3c|fig3d|fig5|heating")
        ->required();
    add_common(preset);

    CLI::App* validate = app.add_subcommand("validate", "check a config file and exit");
    validate->add_option("--config", config_path, "config file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return run_configs({load_config(config_path)}, fl);
        }
        if (preset->parsed()) {
            return run_configs(preset_configs(preset_name), fl);
        }
        if (validate->parsed()) {
            RunConfig cfg = load_config(config_path);
            for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << "\n";
            std::cout << "ok: " << config_hash_hex(cfg) << "\n";
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
