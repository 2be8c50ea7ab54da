// Parameter sweeps over RunConfigs and CSV/JSON result persistence.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "optocool/config.hpp"

namespace optocool {

struct PointRecord {
    double value = 0.0;
    std::vector<std::pair<std::string, double>> observables;  // fixed order per sweep
    double residual = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::string> flags;
    std::string error;  // empty on success
    double wall_seconds = 0.0;
};

struct SweepResult {
    std::string parameter;  // "point" for single-point runs
    std::string method;
    std::string preset;
    std::string hash;
    std::string canonical;  // config echo
    std::vector<std::string> warnings;
    std::vector<std::string> observable_labels;
    std::vector<PointRecord> points;
    double total_seconds = 0.0;
    std::string timestamp;  // ISO 8601, manifest only
    std::string tool_version;

    std::size_t failed_count() const;
};

// Runs the configured solver at every sweep value. Failed points are
// recorded with the error cause; the sweep itself only throws when no
// point succeeds at all (indirectly visible through failed_count).
// workers <= 0 selects the hardware concurrency.
SweepResult run_sweep(const RunConfig& config, int workers = 0);

struct EmitPaths {
    std::string csv;
    std::string json;
};

// Writes <preset|run>_<hash>.csv/.json into the output directory.
// CSV bytes are deterministic for a given config; the JSON manifest
// additionally carries timestamp and wall-clock timings.
EmitPaths emit(const SweepResult& result, const RunConfig& config);

}  // namespace optocool
