#include "optocool/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace optocool {

std::string to_string(SolveMethod m) {
    switch (m) {
        case SolveMethod::analytic: return "analytic";
        case SolveMethod::reduced_ode: return "reduced-ode";
        case SolveMethod::joint_steady_state: return "joint-steady-state";
        case SolveMethod::joint_evolve: return "joint-evolve";
    }
    return "?";
}

SolveMethod method_from_string(const std::string& s) {
    if (s == "analytic") return SolveMethod::analytic;
    if (s == "reduced-ode") return SolveMethod::reduced_ode;
    if (s == "joint-steady-state") return SolveMethod::joint_steady_state;
    if (s == "joint-evolve") return SolveMethod::joint_evolve;
    throw ConfigError("unknown solver method '" + s +
                      "' (analytic|reduced-ode|joint-steady-state|joint-evolve)");
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1) throw ConfigError("linspace: need at least one point");
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * double(i) / double(n - 1);
    v.back() = hi;
    return v;
}

std::vector<double> logspace(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > 0.0)) throw ConfigError("logspace: endpoints must be > 0");
    auto v = linspace(std::log10(lo), std::log10(hi), n);
    for (double& x : v) x = std::pow(10.0, x);
    v.front() = lo;
    v.back() = hi;
    return v;
}

double si_omega_a_rad_per_s() { return 2.0 * M_PI * 1e14; }
double si_kelvin_per_unit() { return 6.62607015e-20 / 1.380649e-23; }
double hot_bath_range_low() { return 4e4 / si_kelvin_per_unit(); }
double hot_bath_range_high() { return 4e7 / si_kelvin_per_unit(); }

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

struct RawConfig {
    // key -> (value, line number)
    std::map<std::string, std::pair<std::string, int>> kv;
    std::string origin;

    bool has(const std::string& k) const { return kv.count(k) > 0; }
    std::string get(const std::string& k, const std::string& fallback) const {
        auto it = kv.find(k);
        return it == kv.end() ? fallback : it->second.first;
    }
    int line(const std::string& k) const { return kv.at(k).second; }
};

double parse_number(const RawConfig& raw, const std::string& key) {
    const std::string v = raw.get(key, "");
    std::size_t used = 0;
    double x = 0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        throw ConfigError(raw.origin + ":" + std::to_string(raw.line(key)) +
                          ": not a number: '" + v + "' for " + key);
    }
    if (used != v.size())
        throw ConfigError(raw.origin + ":" + std::to_string(raw.line(key)) +
                          ": trailing characters in number '" + v + "' for " + key);
    return x;
}

int parse_int(const RawConfig& raw, const std::string& key) {
    const double x = parse_number(raw, key);
    if (x != std::floor(x))
        throw ConfigError(raw.origin + ":" + std::to_string(raw.line(key)) + ": " + key +
                          " must be an integer");
    return int(x);
}

std::vector<double> parse_values(const RawConfig& raw, const std::string& key) {
    const std::string v = raw.get(key, "");
    const auto where = [&] { return raw.origin + ":" + std::to_string(raw.line(key)); };
    try {
        for (const char* fn : {"logspace", "linspace"}) {
            const std::string pre = std::string(fn) + "(";
            if (v.rfind(pre, 0) == 0 && v.back() == ')') {
                const auto args = split(v.substr(pre.size(), v.size() - pre.size() - 1), ',');
                if (args.size() != 3)
                    throw ConfigError(where() + ": " + std::string(fn) + " takes (lo, hi, n)");
                const double lo = std::stod(trim(args[0]));
                const double hi = std::stod(trim(args[1]));
                const int n = int(std::stod(trim(args[2])));
                return fn == std::string("logspace") ? logspace(lo, hi, n)
                                                     : linspace(lo, hi, n);
            }
        }
        std::vector<double> out;
        for (const auto& tok : split(v, ',')) {
            const std::string t = trim(tok);
            if (t.empty()) continue;
            out.push_back(std::stod(t));
        }
        return out;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError(where() + ": cannot parse values '" + v + "' for " + key);
    }
}

const std::set<std::string> kOpticalKeys{"label", "frequency", "truncation"};
const std::set<std::string> kMechKeys{"label", "frequency", "truncation", "coupling"};
const std::set<std::string> kBathKeys{"temperature", "coupling", "family",
                                      "filter.center", "filter.mode", "filter.width"};
const std::set<std::string> kSolverKeys{"method", "tolerance", "truncation", "t_final",
                                        "t_points"};

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    RawConfig raw;
    raw.origin = origin;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        if (!raw.kv.emplace(key, std::make_pair(val, lineno)).second)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" +
                              key + "'");
    }

    RunConfig cfg;
    std::set<int> mech_indices;
    std::set<std::string> bath_labels;
    for (const auto& [key, vl] : raw.kv) {
        const auto parts = split(key, '.');
        const auto bad = [&] {
            return ConfigError(origin + ":" + std::to_string(vl.second) + ": unknown key '" +
                               key + "'");
        };
        if (parts[0] == "scenario" && parts.size() == 1) continue;
        if (parts[0] == "system") {
            if (parts.size() == 3 && parts[1] == "optical") {
                if (!kOpticalKeys.count(parts[2])) throw bad();
            } else if (parts.size() == 4 && parts[1] == "mechanical") {
                int idx = 0;
                try {
                    idx = std::stoi(parts[2]);
                } catch (const std::exception&) {
                    throw bad();
                }
                if (idx < 1 || !kMechKeys.count(parts[3])) throw bad();
                mech_indices.insert(idx);
            } else if (parts.size() == 3 && parts[1] == "coupling") {
                int idx = 0;
                try {
                    idx = std::stoi(parts[2]);
                } catch (const std::exception&) {
                    throw bad();
                }
                if (idx < 1) throw bad();
                mech_indices.insert(idx);
            } else {
                throw bad();
            }
        } else if (parts[0] == "bath" || parts[0] == "baths") {
            if (parts.size() < 3) throw bad();
            const std::string sub =
                parts.size() == 3 ? parts[2] : parts[2] + "." + parts[3];
            if (!kBathKeys.count(sub) || parts.size() > 4) throw bad();
            bath_labels.insert(parts[1]);
        } else if (parts[0] == "solver") {
            if (parts.size() != 2 || !kSolverKeys.count(parts[1])) throw bad();
        } else if (parts[0] == "sweep") {
            if (parts.size() != 2 || (parts[1] != "parameter" && parts[1] != "values"))
                throw bad();
        } else if (parts[0] == "output") {
            if (parts.size() != 2 || (parts[1] != "directory" && parts[1] != "formats"))
                throw bad();
        } else {
            throw bad();
        }
    }

    if (raw.has("scenario")) cfg.scenario = scenario_from_string(raw.get("scenario", ""));

    cfg.system.optical.label = raw.get("system.optical.label", "a");
    if (raw.has("system.optical.frequency"))
        cfg.system.optical.frequency = parse_number(raw, "system.optical.frequency");
    if (raw.has("system.optical.truncation"))
        cfg.system.optical.truncation = parse_int(raw, "system.optical.truncation");

    if (mech_indices.empty())
        throw ConfigError(origin + ": no mechanical modes configured");
    const int n_mech = *mech_indices.rbegin();
    if (int(mech_indices.size()) != n_mech)
        throw ConfigError(origin + ": mechanical mode indices must be contiguous from 1");
    for (int k = 1; k <= n_mech; ++k) {
        const std::string base = "system.mechanical." + std::to_string(k) + ".";
        ModeSpec m;
        m.label = raw.get(base + "label", "m" + std::to_string(k));
        m.frequency = raw.has(base + "frequency") ? parse_number(raw, base + "frequency") : 1.0;
        m.truncation = raw.has(base + "truncation") ? parse_int(raw, base + "truncation") : 2;
        cfg.system.mechanical.push_back(m);
        double g = 0.0;
        if (raw.has(base + "coupling")) g = parse_number(raw, base + "coupling");
        if (raw.has("system.coupling." + std::to_string(k)))
            g = parse_number(raw, "system.coupling." + std::to_string(k));
        cfg.system.couplings.push_back(g);
    }

    for (const auto& label : bath_labels) {
        for (const char* prefix : {"bath.", "baths."}) {
            const std::string base = prefix + label + ".";
            if (!raw.has(base + "temperature") && !raw.has(base + "coupling") &&
                !raw.has(base + "family") && !raw.has(base + "filter.center"))
                continue;
            BathSpec b;
            b.label = label;
            if (raw.has(base + "temperature")) b.temperature = parse_number(raw, base + "temperature");
            if (raw.has(base + "coupling")) b.coupling = parse_number(raw, base + "coupling");
            if (raw.has(base + "family")) {
                const std::string fam = raw.get(base + "family", "ohmic");
                if (fam == "ohmic") b.family = SpectrumFamily::ohmic;
                else if (fam == "flat") b.family = SpectrumFamily::flat;
                else
                    throw ConfigError(origin + ": bath '" + label + "': unknown family '" + fam +
                                      "' (ohmic|flat)");
            }
            if (raw.has(base + "filter.center") || raw.has(base + "filter.width") ||
                raw.has(base + "filter.mode")) {
                FilterSpec f;
                if (raw.has(base + "filter.center")) f.center = parse_number(raw, base + "filter.center");
                if (raw.has(base + "filter.width")) f.width = parse_number(raw, base + "filter.width");
                if (raw.has(base + "filter.mode")) {
                    const std::string fm = raw.get(base + "filter.mode", "hard-window");
                    if (fm == "hard-window") f.mode = FilterMode::hard_window;
                    else if (fm == "lorentzian") f.mode = FilterMode::lorentzian;
                    else if (fm == "lorentzian-fixed") f.mode = FilterMode::lorentzian_fixed;
                    else
                        throw ConfigError(origin + ": bath '" + label + "': unknown filter mode '" +
                                          fm + "' (hard-window|lorentzian|lorentzian-fixed)");
                }
                b.filter = f;
            }
            cfg.baths.push_back(b);
            break;
        }
    }

    if (raw.has("solver.method"))
        cfg.solver.method = method_from_string(raw.get("solver.method", ""));
    if (raw.has("solver.tolerance")) cfg.solver.tolerance = parse_number(raw, "solver.tolerance");
    if (raw.has("solver.truncation")) {
        std::vector<int> tr;
        for (double x : parse_values(raw, "solver.truncation")) tr.push_back(int(x));
        cfg.solver.truncations = tr;
    }
    if (raw.has("solver.t_final")) cfg.solver.t_final = parse_number(raw, "solver.t_final");
    if (raw.has("solver.t_points")) cfg.solver.t_points = parse_int(raw, "solver.t_points");

    if (raw.has("sweep.parameter") || raw.has("sweep.values")) {
        SweepSpec s;
        s.parameter = raw.get("sweep.parameter", "");
        if (raw.has("sweep.values")) s.values = parse_values(raw, "sweep.values");
        cfg.sweep = s;
    }

    if (raw.has("output.directory")) cfg.output.directory = raw.get("output.directory", "out");
    if (raw.has("output.formats")) {
        cfg.output.csv = cfg.output.json = false;
        for (const auto& tok : split(raw.get("output.formats", ""), ',')) {
            const std::string t = trim(tok);
            if (t == "csv") cfg.output.csv = true;
            else if (t == "json") cfg.output.json = true;
            else if (!t.empty())
                throw ConfigError(origin + ": unknown output format '" + t + "' (csv|json)");
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    RunConfig cfg = parse_config_text(ss.str(), path);
    validate_config(cfg);
    return cfg;
}

void validate_config(RunConfig& cfg) {
    std::vector<std::string> issues;
    const auto issue = [&](const std::string& s) { issues.push_back(s); };

    if (!(cfg.system.optical.frequency > 0.0))
        issue("system.optical.frequency: must be > 0");
    if (cfg.system.optical.truncation < 2) issue("system.optical.truncation: must be >= 2");
    if (cfg.system.mechanical.empty()) issue("system.mechanical: at least one mode required");
    for (std::size_t k = 0; k < cfg.system.mechanical.size(); ++k) {
        const auto& m = cfg.system.mechanical[k];
        const std::string base = "system.mechanical." + std::to_string(k + 1) + ".";
        if (!(m.frequency > 0.0)) issue(base + "frequency: must be > 0");
        if (m.truncation < 2) issue(base + "truncation: must be >= 2");
        if (k < cfg.system.couplings.size()) {
            if (!(cfg.system.couplings[k] >= 0.0) || !std::isfinite(cfg.system.couplings[k]))
                issue(base + "coupling: must be finite and >= 0");
        }
    }

    if (cfg.solver.truncations) {
        const auto& tr = *cfg.solver.truncations;
        if (tr.size() != 1 + cfg.system.mechanical.size()) {
            issue("solver.truncation: needs one entry per mode (optical first)");
        } else {
            bool ok = true;
            for (int t : tr)
                if (t < 2) {
                    issue("solver.truncation: entries must be >= 2");
                    ok = false;
                    break;
                }
            if (ok) {
                cfg.system.optical.truncation = tr[0];
                for (std::size_t k = 0; k < cfg.system.mechanical.size(); ++k)
                    cfg.system.mechanical[k].truncation = tr[k + 1];
            }
        }
    }

    std::set<std::string> expected{"H", "C"};
    for (const auto& m : cfg.system.mechanical) expected.insert(m.label);
    std::set<std::string> present;
    for (const auto& b : cfg.baths) {
        if (!present.insert(b.label).second) issue("bath." + b.label + ": duplicate bath");
        if (!(b.temperature > 0.0)) issue("bath." + b.label + ".temperature: must be > 0");
        if (!(b.coupling >= 0.0)) issue("bath." + b.label + ".coupling: must be >= 0");
        if (b.filter) {
            if (!(b.filter->center > 0.0)) issue("bath." + b.label + ".filter.center: must be > 0");
            if (!(b.filter->width > 0.0)) issue("bath." + b.label + ".filter.width: must be > 0");
            if (expected.count(b.label) && b.label != "H" && b.label != "C")
                issue("bath." + b.label + ": mechanical baths are not filtered");
        }
    }
    for (const auto& lbl : expected)
        if (!present.count(lbl)) issue("bath." + lbl + ": missing bath definition");
    for (const auto& lbl : present)
        if (!expected.count(lbl)) issue("bath." + lbl + ": label matches no role (H, C, or mode)");

    if (!(cfg.solver.tolerance > 0.0)) issue("solver.tolerance: must be > 0");
    if (cfg.solver.method == SolveMethod::joint_evolve) {
        if (!(cfg.solver.t_final > 0.0)) issue("solver.t_final: must be > 0");
        if (cfg.solver.t_points < 2) issue("solver.t_points: must be >= 2");
    }

    if (cfg.sweep) {
        if (cfg.sweep->parameter.empty()) {
            issue("sweep.parameter: missing");
        } else if (cfg.sweep->parameter == "time") {
            if (cfg.solver.method != SolveMethod::joint_evolve)
                issue("sweep.parameter: 'time' requires solver.method = joint-evolve");
            if (cfg.sweep->values.empty() || cfg.sweep->values.front() != 0.0)
                issue("sweep.values: a time sweep must start at 0");
            for (std::size_t k = 1; k < cfg.sweep->values.size(); ++k)
                if (!(cfg.sweep->values[k] > cfg.sweep->values[k - 1])) {
                    issue("sweep.values: time values must increase strictly");
                    break;
                }
        } else if (resolve_parameter(cfg, cfg.sweep->parameter) == nullptr) {
            issue("sweep.parameter: '" + cfg.sweep->parameter +
                  "' does not resolve to a numeric field");
        }
        if (cfg.sweep->values.empty()) issue("sweep.values: empty");
        for (double v : cfg.sweep->values)
            if (!std::isfinite(v)) {
                issue("sweep.values: values must be finite");
                break;
            }
    }

    if (!cfg.output.csv && !cfg.output.json) issue("output.formats: need csv and/or json");

    if (!issues.empty()) {
        std::string msg = "invalid configuration:";
        for (const auto& s : issues) msg += "\n  - " + s;
        throw ConfigError(msg, issues);
    }

    cfg.warnings = weak_coupling_warnings(cfg.system, cfg.baths);
}

double* resolve_parameter(RunConfig& cfg, const std::string& path_in) {
    std::string path = path_in;
    if (path.rfind("baths.", 0) == 0) path = "bath." + path.substr(6);
    const auto p = split(path, '.');
    if (p.size() == 3 && p[0] == "system" && p[1] == "optical" && p[2] == "frequency")
        return &cfg.system.optical.frequency;
    if (p.size() == 4 && p[0] == "system" && p[1] == "mechanical") {
        int k = 0;
        try {
            k = std::stoi(p[2]);
        } catch (const std::exception&) {
            return nullptr;
        }
        if (k < 1 || std::size_t(k) > cfg.system.mechanical.size()) return nullptr;
        if (p[3] == "frequency") return &cfg.system.mechanical[k - 1].frequency;
        if (p[3] == "coupling") return &cfg.system.couplings[k - 1];
        return nullptr;
    }
    if (p.size() == 3 && p[0] == "system" && p[1] == "coupling") {
        int k = 0;
        try {
            k = std::stoi(p[2]);
        } catch (const std::exception&) {
            return nullptr;
        }
        if (k < 1 || std::size_t(k) > cfg.system.couplings.size()) return nullptr;
        return &cfg.system.couplings[k - 1];
    }
    if (p.size() >= 3 && p[0] == "bath") {
        for (auto& b : cfg.baths) {
            if (b.label != p[1]) continue;
            if (p.size() == 3 && p[2] == "temperature") return &b.temperature;
            if (p.size() == 3 && p[2] == "coupling") return &b.coupling;
            if (p.size() == 4 && p[2] == "filter" && b.filter) {
                if (p[3] == "center") return &b.filter->center;
                if (p[3] == "width") return &b.filter->width;
            }
            return nullptr;
        }
    }
    return nullptr;
}

namespace {

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

namespace {
std::string canonical_impl(const RunConfig& cfg, bool with_output);
}

std::string canonical_config(const RunConfig& cfg) { return canonical_impl(cfg, true); }

namespace {

std::string canonical_impl(const RunConfig& cfg, bool with_output) {
    std::ostringstream out;
    out << "scenario = " << to_string(cfg.scenario) << "\n";
    out << "system.optical.label = " << cfg.system.optical.label << "\n";
    out << "system.optical.frequency = " << fmt(cfg.system.optical.frequency) << "\n";
    out << "system.optical.truncation = " << cfg.system.optical.truncation << "\n";
    for (std::size_t k = 0; k < cfg.system.mechanical.size(); ++k) {
        const auto& m = cfg.system.mechanical[k];
        const std::string base = "system.mechanical." + std::to_string(k + 1) + ".";
        out << base << "label = " << m.label << "\n";
        out << base << "frequency = " << fmt(m.frequency) << "\n";
        out << base << "truncation = " << m.truncation << "\n";
        out << base << "coupling = " << fmt(cfg.system.couplings[k]) << "\n";
    }
    std::vector<std::string> order{"C", "H"};
    for (const auto& m : cfg.system.mechanical) order.push_back(m.label);
    for (const auto& lbl : order) {
        for (const auto& b : cfg.baths) {
            if (b.label != lbl) continue;
            const std::string base = "bath." + b.label + ".";
            out << base << "temperature = " << fmt(b.temperature) << "\n";
            out << base << "coupling = " << fmt(b.coupling) << "\n";
            out << base << "family = "
                << (b.family == SpectrumFamily::ohmic ? "ohmic" : "flat") << "\n";
            if (b.filter) {
                const char* mode = "hard-window";
                if (b.filter->mode == FilterMode::lorentzian) mode = "lorentzian";
                if (b.filter->mode == FilterMode::lorentzian_fixed) mode = "lorentzian-fixed";
                out << base << "filter.center = " << fmt(b.filter->center) << "\n";
                out << base << "filter.mode = " << mode << "\n";
                out << base << "filter.width = " << fmt(b.filter->width) << "\n";
            }
        }
    }
    out << "solver.method = " << to_string(cfg.solver.method) << "\n";
    out << "solver.tolerance = " << fmt(cfg.solver.tolerance) << "\n";
    if (cfg.solver.truncations) {
        out << "solver.truncation = ";
        for (std::size_t k = 0; k < cfg.solver.truncations->size(); ++k)
            out << (k ? "," : "") << (*cfg.solver.truncations)[k];
        out << "\n";
    }
    if (cfg.solver.method == SolveMethod::joint_evolve) {
        out << "solver.t_final = " << fmt(cfg.solver.t_final) << "\n";
        out << "solver.t_points = " << cfg.solver.t_points << "\n";
    }
    if (cfg.sweep) {
        out << "sweep.parameter = " << cfg.sweep->parameter << "\n";
        out << "sweep.values = ";
        for (std::size_t k = 0; k < cfg.sweep->values.size(); ++k)
            out << (k ? "," : "") << fmt(cfg.sweep->values[k]);
        out << "\n";
    }
    if (with_output) {
        out << "output.directory = " << cfg.output.directory << "\n";
        out << "output.formats = ";
        if (cfg.output.csv) out << "csv";
        if (cfg.output.csv && cfg.output.json) out << ",";
        if (cfg.output.json) out << "json";
        out << "\n";
    }
    return out.str();
}

}  // namespace

// The hash identifies the numerical content of a run, so the output
// destination is not part of it.
std::string config_hash_hex(const RunConfig& cfg) {
    const std::string s = canonical_impl(cfg, false);
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

RunConfig fig2_base() {
    RunConfig cfg;
    cfg.scenario = Scenario::cooling;
    cfg.system.optical = {"a", 1.0, 7};
    cfg.system.mechanical = {{"m1", 1e-7, 70}};
    cfg.system.couplings = {1e-9};
    cfg.baths = {
        {"H", 1e3, 1e-8, SpectrumFamily::ohmic, std::nullopt},
        {"C", 1e-5, 1e-8, SpectrumFamily::ohmic, std::nullopt},
        {"m1", 2e-4, 1e-12, SpectrumFamily::ohmic, std::nullopt},
    };
    cfg.solver.method = SolveMethod::analytic;
    cfg.sweep = SweepSpec{"bath.H.temperature",
                          logspace(hot_bath_range_low(), hot_bath_range_high(), 40)};
    return cfg;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"fig2", "fig3a", "fig3b", "fig3c", "fig3d", "fig5", "heating"};
}

std::vector<RunConfig> preset_configs(const std::string& name) {
    std::vector<RunConfig> out;
    if (name == "fig2") {
        for (double T1 : {1e-4, 2e-4, 3e-4}) {
            RunConfig cfg = fig2_base();
            for (auto& b : cfg.baths)
                if (b.label == "m1") b.temperature = T1;
            cfg.preset = "fig2";
            out.push_back(cfg);
        }
    } else if (name.rfind("fig3", 0) == 0 && name.size() == 5) {
        RunConfig cfg = fig2_base();
        cfg.system.mechanical = {{"m1", 1e-7, 70}, {"m2", 1e-7, 70}};
        cfg.system.couplings = {1e-9, 1e-9};
        cfg.baths = {
            {"H", 1e3, 1e-8, SpectrumFamily::ohmic, std::nullopt},
            {"C", 1e-5, 1e-8, SpectrumFamily::ohmic, std::nullopt},
            {"m1", 2e-4, 1e-12, SpectrumFamily::ohmic, std::nullopt},
            {"m2", 2e-4, 1e-12, SpectrumFamily::ohmic, std::nullopt},
        };
        switch (name[4]) {
            case 'a': break;
            case 'b': cfg.system.mechanical[1].frequency = 0.75e-7; break;
            case 'c': cfg.system.couplings[1] = 0.5e-9; break;
            case 'd':
                for (auto& b : cfg.baths)
                    if (b.label == "m2") b.coupling = 1e-11;
                break;
            default: throw ConfigError("unknown preset '" + name + "'");
        }
        cfg.preset = name;
        out.push_back(cfg);
    } else if (name == "fig5") {
        RunConfig cfg = fig2_base();
        // bath occupations pinned to nbar_c = 0.5 and nbar_1 = 10
        for (auto& b : cfg.baths) {
            if (b.label == "C") b.temperature = 1.0 / std::log(3.0);
            if (b.label == "m1") b.temperature = 1e-7 / std::log(1.1);
        }
        cfg.solver.method = SolveMethod::joint_steady_state;
        cfg.solver.tolerance = 1e-8;
        cfg.preset = "fig5";
        out.push_back(cfg);
    } else if (name == "heating") {
        RunConfig cfg = fig2_base();
        cfg.scenario = Scenario::heating;
        cfg.system.optical.truncation = 4;
        cfg.system.mechanical[0].truncation = 12;
        cfg.solver.method = SolveMethod::joint_evolve;
        cfg.solver.t_final = 3e9;
        cfg.solver.t_points = 61;
        cfg.sweep = SweepSpec{"time", linspace(0.0, 3e9, 61)};
        cfg.preset = "heating";
        out.push_back(cfg);
    } else {
        throw ConfigError("unknown preset '" + name + "'; available: fig2 fig3a fig3b fig3c "
                          "fig3d fig5 heating");
    }
    for (auto& cfg : out) validate_config(cfg);
    return out;
}

}  // namespace optocool
