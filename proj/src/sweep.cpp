#include "optocool/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "optocool/liouvillian.hpp"
#include "optocool/rates.hpp"
#include "optocool/solver.hpp"
#include "optocool/version.hpp"

namespace optocool {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<std::string> observable_labels(const RunConfig& cfg) {
    const std::size_t n = cfg.system.mechanical.size();
    std::vector<std::string> out;
    const bool time_sweep = cfg.sweep && cfg.sweep->parameter == "time";
    switch (cfg.solver.method) {
        case SolveMethod::analytic:
            out.push_back("na_ss");
            for (std::size_t i = 0; i < n; ++i) {
                out.push_back("n" + std::to_string(i + 1) + "_ss");
                out.push_back("Gamma" + std::to_string(i + 1));
            }
            break;
        case SolveMethod::reduced_ode:
            out.push_back("na_ss");
            for (std::size_t i = 0; i < n; ++i)
                out.push_back("n" + std::to_string(i + 1) + "_ode");
            break;
        case SolveMethod::joint_steady_state:
            out.push_back("na_joint");
            for (std::size_t i = 0; i < n; ++i)
                out.push_back("n" + std::to_string(i + 1) + "_joint");
            for (std::size_t i = 0; i < n; ++i)
                out.push_back("n" + std::to_string(i + 1) + "_analytic");
            out.push_back("top_a");
            for (std::size_t i = 0; i < n; ++i)
                out.push_back("top_m" + std::to_string(i + 1));
            break;
        case SolveMethod::joint_evolve:
            if (time_sweep) {
                out.push_back("n1_formula");
                out.push_back("n1_exact");
                out.push_back("na_joint");
                for (std::size_t i = 0; i < n; ++i)
                    out.push_back("n" + std::to_string(i + 1) + "_joint");
            } else {
                out.push_back("na_final");
                for (std::size_t i = 0; i < n; ++i)
                    out.push_back("n" + std::to_string(i + 1) + "_final");
            }
            break;
    }
    return out;
}

struct AnalyticPoint {
    double na = kNaN;
    std::vector<double> n_ss;     // per resonator; NaN when unstable
    std::vector<double> gamma;    // per resonator
    std::vector<std::string> flags;
};

AnalyticPoint analytic_point(const RunConfig& cfg) {
    AnalyticPoint out;
    const auto filtered = apply_default_filters(cfg.scenario, cfg.system, cfg.baths);
    out.na = cavity_occupation_ss(cfg.system, filtered);
    for (std::size_t i = 0; i < cfg.system.mechanical.size(); ++i) {
        const RateSet r = scenario_rates(i, cfg.scenario, cfg.system, cfg.baths, out.na);
        out.gamma.push_back(r.Gamma);
        const auto& mode = cfg.system.mechanical[i];
        const BathSpec& mb = find_bath(cfg.baths, mode.label);
        const double keff = mechanical_damping(mb, mode.frequency);
        const double nbar = bose_occupation(mode.frequency, mb.temperature);
        try {
            out.n_ss.push_back(phonon_ss_cooling(r, keff, nbar));
        } catch (const InstabilityError&) {
            out.n_ss.push_back(kNaN);
            out.flags.push_back("unstable:" + mode.label);
        }
    }
    return out;
}

double reduced_ode_point(const RunConfig& cfg, std::size_t i, const AnalyticPoint& ap,
                         std::vector<std::string>& flags) {
    const RateSet r = scenario_rates(i, cfg.scenario, cfg.system, cfg.baths, ap.na);
    const auto& mode = cfg.system.mechanical[i];
    const BathSpec& mb = find_bath(cfg.baths, mode.label);
    const double keff = mechanical_damping(mb, mode.frequency);
    const double nbar = bose_occupation(mode.frequency, mb.temperature);
    const double lam = r.Gamma + keff;
    if (!(lam > 0.0)) {
        flags.push_back("unstable:" + mode.label);
        return kNaN;
    }
    const double src = r.A_plus + keff * nbar;
    // RK4 on dn/dt = src - lam n until well past the relaxation time
    const double t_end = 40.0 / lam;
    const int steps = 4000;
    const double h = t_end / steps;
    double n = nbar;
    for (int s = 0; s < steps; ++s) {
        const auto f = [&](double x) { return src - lam * x; };
        const double k1 = f(n);
        const double k2 = f(n + 0.5 * h * k1);
        const double k3 = f(n + 0.5 * h * k2);
        const double k4 = f(n + h * k3);
        n += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return n;
}

PointRecord compute_point(const RunConfig& cfg, double value,
                          const std::vector<std::string>& labels) {
    PointRecord rec;
    rec.value = value;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        std::vector<std::pair<std::string, double>> obs;
        const std::size_t n = cfg.system.mechanical.size();
        switch (cfg.solver.method) {
            case SolveMethod::analytic: {
                const auto ap = analytic_point(cfg);
                obs.emplace_back("na_ss", ap.na);
                for (std::size_t i = 0; i < n; ++i) {
                    obs.emplace_back("n" + std::to_string(i + 1) + "_ss", ap.n_ss[i]);
                    obs.emplace_back("Gamma" + std::to_string(i + 1), ap.gamma[i]);
                }
                rec.flags = ap.flags;
                break;
            }
            case SolveMethod::reduced_ode: {
                const auto ap = analytic_point(cfg);
                obs.emplace_back("na_ss", ap.na);
                for (std::size_t i = 0; i < n; ++i)
                    obs.emplace_back("n" + std::to_string(i + 1) + "_ode",
                                     reduced_ode_point(cfg, i, ap, rec.flags));
                break;
            }
            case SolveMethod::joint_steady_state: {
                const Liouvillian L = build_scenario(cfg.scenario, cfg.system, cfg.baths);
                const auto ss = steady_state(L, cfg.solver.tolerance);
                const auto means = mode_number_means(ss.state.matrix(), L.dims);
                obs.emplace_back("na_joint", means[0]);
                for (std::size_t i = 0; i < n; ++i)
                    obs.emplace_back("n" + std::to_string(i + 1) + "_joint", means[i + 1]);
                const auto ap = analytic_point(cfg);
                for (std::size_t i = 0; i < n; ++i)
                    obs.emplace_back("n" + std::to_string(i + 1) + "_analytic", ap.n_ss[i]);
                rec.flags = ap.flags;
                obs.emplace_back("top_a", ss.top_level_populations[0]);
                for (std::size_t i = 0; i < n; ++i)
                    obs.emplace_back("top_m" + std::to_string(i + 1),
                                     ss.top_level_populations[i + 1]);
                const std::vector<std::string> mode_names = [&] {
                    std::vector<std::string> v{cfg.system.optical.label};
                    for (const auto& m : cfg.system.mechanical) v.push_back(m.label);
                    return v;
                }();
                for (std::size_t k = 0; k < ss.truncation_flags.size(); ++k)
                    if (ss.truncation_flags[k]) rec.flags.push_back("trunc:" + mode_names[k]);
                rec.residual = ss.residual;
                break;
            }
            case SolveMethod::joint_evolve: {
                const Liouvillian L = build_scenario(cfg.scenario, cfg.system, cfg.baths);
                const auto dims = cfg.system.dims();
                const auto ap = analytic_point(cfg);
                std::vector<Operator> factors;
                // initial state: cavity at its steady occupation, each
                // resonator thermal at its own bath occupation
                Eigen::MatrixXcd rho0m = thermal_state(dims[0], std::max(ap.na, 0.0)).matrix();
                std::vector<int> d0{dims[0]};
                for (std::size_t i = 0; i < n; ++i) {
                    const auto& mode = cfg.system.mechanical[i];
                    const BathSpec& mb = find_bath(cfg.baths, mode.label);
                    const double nb = bose_occupation(mode.frequency, mb.temperature);
                    const Eigen::MatrixXcd th = thermal_state(dims[i + 1], nb).matrix();
                    Eigen::MatrixXcd next(rho0m.rows() * th.rows(), rho0m.cols() * th.cols());
                    for (Eigen::Index r = 0; r < rho0m.rows(); ++r)
                        for (Eigen::Index c = 0; c < rho0m.cols(); ++c)
                            next.block(r * th.rows(), c * th.cols(), th.rows(), th.cols()) =
                                rho0m(r, c) * th;
                    rho0m = next;
                    d0.push_back(dims[i + 1]);
                }
                const DensityMatrix rho0 = DensityMatrix::trusted(d0, rho0m);
                const auto grid = linspace(0.0, cfg.solver.t_final, cfg.solver.t_points);
                std::vector<Observable> want;
                for (std::size_t k = 0; k < dims.size(); ++k) {
                    std::vector<Operator> nf;
                    for (std::size_t j = 0; j < dims.size(); ++j)
                        nf.push_back(j == k ? make_number(dims[j]) : make_identity(dims[j]));
                    want.push_back({"n" + std::to_string(k), tensor(nf)});
                }
                const auto traj = evolve(L, rho0, grid, want);
                obs.emplace_back("na_final", traj.observables.at("n0").back());
                for (std::size_t i = 0; i < n; ++i)
                    obs.emplace_back("n" + std::to_string(i + 1) + "_final",
                                     traj.observables.at("n" + std::to_string(i + 1)).back());
                const auto pops = top_level_populations(traj.final_state.matrix(), dims);
                std::vector<std::string> names{cfg.system.optical.label};
                for (const auto& m : cfg.system.mechanical) names.push_back(m.label);
                for (std::size_t k = 0; k < pops.size(); ++k)
                    if (pops[k] > 1e-6) rec.flags.push_back("trunc:" + names[k]);
                break;
            }
        }
        rec.observables = std::move(obs);
        if (rec.observables.size() != labels.size())
            throw std::logic_error("observable column mismatch");
    } catch (const std::exception& e) {
        rec.error = e.what();
        rec.observables.clear();
        for (const auto& l : labels) rec.observables.emplace_back(l, kNaN);
    }
    rec.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

// One shared evolve serving every time grid point.
std::vector<PointRecord> time_sweep_points(const RunConfig& cfg,
                                           const std::vector<std::string>& labels) {
    std::vector<PointRecord> recs;
    const auto t0 = std::chrono::steady_clock::now();
    const auto& grid = cfg.sweep->values;
    try {
        const std::size_t n = cfg.system.mechanical.size();
        const auto dims = cfg.system.dims();
        const auto ap = analytic_point(cfg);
        const RateSet r = scenario_rates(0, cfg.scenario, cfg.system, cfg.baths, ap.na);
        const auto& mode0 = cfg.system.mechanical[0];
        const BathSpec& mb0 = find_bath(cfg.baths, mode0.label);
        const double keff = mechanical_damping(mb0, mode0.frequency);
        const double nbar = bose_occupation(mode0.frequency, mb0.temperature);

        Eigen::MatrixXcd rho0m = thermal_state(dims[0], std::max(ap.na, 0.0)).matrix();
        std::vector<int> d0{dims[0]};
        for (std::size_t i = 0; i < n; ++i) {
            const auto& mode = cfg.system.mechanical[i];
            const BathSpec& mb = find_bath(cfg.baths, mode.label);
            const double nb = bose_occupation(mode.frequency, mb.temperature);
            const Eigen::MatrixXcd th = thermal_state(dims[i + 1], nb).matrix();
            Eigen::MatrixXcd next(rho0m.rows() * th.rows(), rho0m.cols() * th.cols());
            for (Eigen::Index rr = 0; rr < rho0m.rows(); ++rr)
                for (Eigen::Index cc = 0; cc < rho0m.cols(); ++cc)
                    next.block(rr * th.rows(), cc * th.cols(), th.rows(), th.cols()) =
                        rho0m(rr, cc) * th;
            rho0m = next;
            d0.push_back(dims[i + 1]);
        }
        const DensityMatrix rho0 = DensityMatrix::trusted(d0, rho0m);

        const Liouvillian L = build_scenario(cfg.scenario, cfg.system, cfg.baths);
        std::vector<Observable> want;
        for (std::size_t k = 0; k < dims.size(); ++k) {
            std::vector<Operator> nf;
            for (std::size_t j = 0; j < dims.size(); ++j)
                nf.push_back(j == k ? make_number(dims[j]) : make_identity(dims[j]));
            want.push_back({"n" + std::to_string(k), tensor(nf)});
        }
        const auto traj = evolve(L, rho0, grid, want);
        const double per_point =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() /
            double(grid.size());
        const auto pops = top_level_populations(traj.final_state.matrix(), dims);
        std::vector<std::string> names{cfg.system.optical.label};
        for (const auto& m : cfg.system.mechanical) names.push_back(m.label);
        std::vector<std::string> trunc_flags;
        for (std::size_t k = 0; k < pops.size(); ++k)
            if (pops[k] > 1e-6) trunc_flags.push_back("trunc:" + names[k]);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            PointRecord rec;
            rec.value = grid[k];
            rec.observables.emplace_back(
                "n1_formula", phonon_transient_heating(r, keff, nbar, grid[k]));
            rec.observables.emplace_back(
                "n1_exact", phonon_transient_exact(r, keff, nbar, nbar, grid[k]));
            rec.observables.emplace_back("na_joint", traj.observables.at("n0")[k]);
            for (std::size_t i = 0; i < n; ++i)
                rec.observables.emplace_back(
                    "n" + std::to_string(i + 1) + "_joint",
                    traj.observables.at("n" + std::to_string(i + 1))[k]);
            if (k + 1 == grid.size()) rec.flags = trunc_flags;
            rec.wall_seconds = per_point;
            recs.push_back(std::move(rec));
        }
    } catch (const std::exception& e) {
        recs.clear();
        for (double v : grid) {
            PointRecord rec;
            rec.value = v;
            rec.error = e.what();
            for (const auto& l : labels) rec.observables.emplace_back(l, kNaN);
            recs.push_back(std::move(rec));
        }
    }
    return recs;
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

std::size_t SweepResult::failed_count() const {
    std::size_t k = 0;
    for (const auto& p : points)
        if (!p.error.empty()) ++k;
    return k;
}

SweepResult run_sweep(const RunConfig& config, int workers) {
    RunConfig cfg = config;
    validate_config(cfg);

    SweepResult res;
    res.parameter = cfg.sweep ? cfg.sweep->parameter : "point";
    res.method = to_string(cfg.solver.method);
    res.preset = cfg.preset.empty() ? "run" : cfg.preset;
    res.hash = config_hash_hex(cfg);
    res.canonical = canonical_config(cfg);
    res.warnings = cfg.warnings;
    res.observable_labels = observable_labels(cfg);
    res.tool_version = std::string(kToolName) + " " + kToolVersion;
    res.timestamp = iso_timestamp();

    const auto t0 = std::chrono::steady_clock::now();
    if (cfg.sweep && cfg.sweep->parameter == "time") {
        res.points = time_sweep_points(cfg, res.observable_labels);
    } else {
        std::vector<double> values = cfg.sweep ? cfg.sweep->values
                                               : std::vector<double>{0.0};
        std::sort(values.begin(), values.end());  // records are ordered by sweep value
        res.points.resize(values.size());
        int W = workers > 0 ? workers : int(std::thread::hardware_concurrency());
        W = std::max(1, std::min<int>(W, int(values.size())));
        std::vector<std::thread> pool;
        for (int w = 0; w < W; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t k = std::size_t(w); k < values.size(); k += std::size_t(W)) {
                    RunConfig local = cfg;
                    if (cfg.sweep) {
                        double* target = resolve_parameter(local, cfg.sweep->parameter);
                        if (target == nullptr) {
                            PointRecord rec;
                            rec.value = values[k];
                            rec.error = "sweep parameter no longer resolves";
                            for (const auto& l : res.observable_labels)
                                rec.observables.emplace_back(
                                    l, std::numeric_limits<double>::quiet_NaN());
                            res.points[k] = std::move(rec);
                            continue;
                        }
                        *target = values[k];
                    }
                    res.points[k] = compute_point(local, values[k], res.observable_labels);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    res.total_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (!res.points.empty() && res.failed_count() == res.points.size())
        throw std::runtime_error("all " + std::to_string(res.points.size()) +
                                 " sweep points failed; first error: " + res.points[0].error);
    return res;
}

namespace {

std::string fmt_sci(double x) {
    if (std::isnan(x)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", x);
    return buf;
}

std::string sanitize(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ' ';
    return s;
}

}  // namespace

EmitPaths emit(const SweepResult& result, const RunConfig& config) {
    namespace fs = std::filesystem;
    EmitPaths paths;
    std::error_code ec;
    fs::create_directories(config.output.directory, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory '" + config.output.directory +
                                 "': " + ec.message());
    const std::string stem = result.preset + "_" + result.hash;

    if (config.output.csv) {
        const fs::path p = fs::path(config.output.directory) / (stem + ".csv");
        std::ofstream out(p);
        if (!out) throw std::runtime_error("cannot write " + p.string());
        out << result.parameter;
        for (const auto& l : result.observable_labels) out << "," << l;
        out << ",residual,flags\n";
        for (const auto& pt : result.points) {
            out << fmt_sci(pt.value);
            for (const auto& [label, v] : pt.observables) out << "," << fmt_sci(v);
            out << "," << fmt_sci(pt.residual) << ",";
            std::string flags;
            for (const auto& f : pt.flags) flags += (flags.empty() ? "" : ";") + sanitize(f);
            if (!pt.error.empty())
                flags += (flags.empty() ? "error:" : ";error:") + sanitize(pt.error);
            out << flags << "\n";
        }
        if (!out) throw std::runtime_error("write failure on " + p.string());
        paths.csv = p.string();
    }

    if (config.output.json) {
        nlohmann::json j;
        j["tool"] = result.tool_version;
        j["preset"] = result.preset;
        j["hash"] = result.hash;
        j["method"] = result.method;
        j["parameter"] = result.parameter;
        j["timestamp"] = result.timestamp;
        j["total_seconds"] = result.total_seconds;
        j["warnings"] = result.warnings;
        j["config"] = result.canonical;
        j["si_conversion"] = {
            {"omega_a_rad_per_s", si_omega_a_rad_per_s()},
            {"kelvin_per_temperature_unit", si_kelvin_per_unit()},
            {"note", "scaled units; multiply temperatures by kelvin_per_temperature_unit "
                     "for kelvin (documentation only, never used in computation)"},
        };
        nlohmann::json pts = nlohmann::json::array();
        for (const auto& pt : result.points) {
            nlohmann::json p;
            p["value"] = pt.value;
            nlohmann::json obs;
            for (const auto& [label, v] : pt.observables) {
                if (std::isnan(v))
                    obs[label] = nullptr;
                else
                    obs[label] = v;
            }
            p["observables"] = obs;
            if (!std::isnan(pt.residual)) p["residual"] = pt.residual;
            p["flags"] = pt.flags;
            if (!pt.error.empty()) p["error"] = pt.error;
            p["wall_seconds"] = pt.wall_seconds;
            pts.push_back(p);
        }
        j["points"] = pts;
        const fs::path p = fs::path(config.output.directory) / (stem + ".json");
        std::ofstream out(p);
        if (!out) throw std::runtime_error("cannot write " + p.string());
        out << j.dump(2) << "\n";
        if (!out) throw std::runtime_error("write failure on " + p.string());
        paths.json = p.string();
    }
    return paths;
}

}  // namespace optocool
