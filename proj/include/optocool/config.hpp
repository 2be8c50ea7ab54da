// Run configuration: flat dotted-key config files, validation, parameter
// sweep resolution, canonical serialization and the built-in figure
// presets.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "optocool/bath.hpp"
#include "optocool/fock.hpp"

namespace optocool {

enum class SolveMethod { analytic, reduced_ode, joint_steady_state, joint_evolve };

std::string to_string(SolveMethod m);
SolveMethod method_from_string(const std::string& s);

struct SolverSpec {
    SolveMethod method = SolveMethod::analytic;
    double tolerance = 1e-10;
    std::optional<std::vector<int>> truncations;  // [optical, mech...] override
    double t_final = 1.0;                         // joint-evolve horizon
    int t_points = 50;
};

struct SweepSpec {
    std::string parameter;       // dotted path, or "time" with joint-evolve
    std::vector<double> values;  // non-empty, finite
};

struct OutputSpec {
    std::string directory = "out";
    bool csv = true;
    bool json = true;
};

struct RunConfig {
    Scenario scenario = Scenario::cooling;
    SystemConfig system;
    std::vector<BathSpec> baths;
    SolverSpec solver;
    std::optional<SweepSpec> sweep;
    OutputSpec output;
    std::vector<std::string> warnings;  // attached by validation
    std::string preset;                 // set for built-in presets
};

std::vector<double> linspace(double lo, double hi, int n);
std::vector<double> logspace(double lo, double hi, int n);  // log10-spaced

// Parse the dotted key = value format. Throws ConfigError with the line
// number on malformed input.
RunConfig parse_config_text(const std::string& text, const std::string& origin);
RunConfig load_config(const std::string& path);

// Full validation pass; collects every violation into one ConfigError and
// attaches weak-coupling warnings. Applies solver truncation overrides.
void validate_config(RunConfig& config);

// Pointer to the numeric field addressed by a dotted path ("bath.H.temperature",
// "system.mechanical.1.frequency", ...); nullptr when the path does not
// resolve. "baths." is accepted as an alias of "bath.".
double* resolve_parameter(RunConfig& config, const std::string& path);

// Canonical text form: fixed key order, %.17g numbers. Equal configs have
// equal canonical forms.
std::string canonical_config(const RunConfig& config);
// FNV-1a hash of the canonical form, 16 hex digits.
std::string config_hash_hex(const RunConfig& config);

// Built-in figure presets; fig2 expands to one config per bath temperature
// curve. Throws ConfigError for unknown names.
std::vector<RunConfig> preset_configs(const std::string& name);
std::vector<std::string> preset_names();

// Preset hot-bath temperature range: 4e4 K and 4e7 K in scaled units.
double hot_bath_range_low();
double hot_bath_range_high();

// SI conversion constants emitted into manifests (never used in
// computation): omega_a in rad/s and kelvin per scaled temperature unit.
double si_omega_a_rad_per_s();
double si_kelvin_per_unit();

}  // namespace optocool
