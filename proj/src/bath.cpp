#include "optocool/bath.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace optocool {

void FilterSpec::validate() const {
    if (!(center > 0.0)) throw ConfigError("filter: center must be > 0");
    if (!(width > 0.0)) throw ConfigError("filter: width must be > 0");
}

void BathSpec::validate() const {
    if (label.empty()) throw ConfigError("bath: empty label");
    if (!(temperature > 0.0))
        throw ConfigError("bath '" + label + "': temperature must be > 0");
    if (!(coupling >= 0.0))
        throw ConfigError("bath '" + label + "': coupling must be >= 0");
    if (filter) filter->validate();
}

double bose_occupation(double frequency, double temperature) {
    if (!(frequency > 0.0))
        throw std::invalid_argument("bose_occupation: frequency must be > 0");
    if (!(temperature > 0.0))
        throw std::invalid_argument("bose_occupation: temperature must be > 0");
    const double e = std::expm1(frequency / temperature);
    if (std::isinf(e)) return 0.0;  // underflow clamp for w/T beyond exp range
    return 1.0 / e;
}

namespace {

double coupling_density(double abs_frequency, const BathSpec& bath) {
    switch (bath.family) {
        case SpectrumFamily::ohmic: return bath.coupling * abs_frequency;
        case SpectrumFamily::flat: return bath.coupling;
    }
    return 0.0;
}

}  // namespace

double spectrum(double frequency, const BathSpec& bath) {
    if (frequency == 0.0)
        throw std::invalid_argument("spectrum: frequency must be nonzero");
    const double a = std::abs(frequency);
    const double n = bose_occupation(a, bath.temperature);
    const double k = coupling_density(a, bath);
    return frequency > 0.0 ? k * (1.0 + n) : k * n;
}

double filtered_spectrum(double frequency, const BathSpec& bath) {
    if (!bath.filter)
        throw InvalidState("filtered_spectrum: bath '" + bath.label + "' has no filter");
    const FilterSpec& f = *bath.filter;
    const double a = std::abs(frequency);
    double window = 0.0;
    switch (f.mode) {
        case FilterMode::hard_window:
            window = std::abs(a - f.center) <= 0.5 * f.width ? 1.0 : 0.0;
            break;
        case FilterMode::lorentzian: {
            // Width follows the positive-frequency rate so both signs share
            // one window and detailed balance survives the filtering.
            const double hw = std::max(M_PI * spectrum(a, bath), f.width);
            const double d = (a - f.center) / hw;
            window = 1.0 / (1.0 + d * d);
            break;
        }
        case FilterMode::lorentzian_fixed: {
            const double d = (a - f.center) / f.width;
            window = 1.0 / (1.0 + d * d);
            break;
        }
    }
    if (window == 0.0) return 0.0;
    return window * spectrum(frequency, bath);
}

double bath_rate(double frequency, const BathSpec& bath) {
    return bath.filter ? filtered_spectrum(frequency, bath) : spectrum(frequency, bath);
}

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::full: return "full";
        case Scenario::cooling: return "cooling";
        case Scenario::heating: return "heating";
    }
    return "?";
}

Scenario scenario_from_string(const std::string& s) {
    if (s == "full") return Scenario::full;
    if (s == "cooling") return Scenario::cooling;
    if (s == "heating") return Scenario::heating;
    throw ConfigError("unknown scenario '" + s + "' (full|cooling|heating)");
}

const BathSpec& find_bath(const std::vector<BathSpec>& baths, const std::string& label) {
    for (const auto& b : baths)
        if (b.label == label) return b;
    throw ConfigError("no bath labeled '" + label + "'");
}

namespace {

void check_bath_roles(const SystemConfig& config, const std::vector<BathSpec>& baths) {
    std::set<std::string> seen;
    for (const auto& b : baths) {
        b.validate();
        if (!seen.insert(b.label).second)
            throw ConfigError("duplicate bath label '" + b.label + "'");
    }
    std::set<std::string> expected{"H", "C"};
    for (const auto& m : config.mechanical) {
        expected.insert(m.label);
        const auto* mb = &find_bath(baths, m.label);
        if (mb->filter)
            throw ConfigError("bath '" + m.label + "': mechanical baths are not filtered");
    }
    for (const auto& lbl : expected) find_bath(baths, lbl);  // throws when missing
    if (baths.size() != expected.size())
        throw ConfigError("bath list holds labels outside {H, C, mechanical modes}");
}

double min_mech_frequency(const SystemConfig& config) {
    double w = config.mechanical.front().frequency;
    for (const auto& m : config.mechanical) w = std::min(w, m.frequency);
    return w;
}

double max_mech_frequency(const SystemConfig& config) {
    double w = config.mechanical.front().frequency;
    for (const auto& m : config.mechanical) w = std::max(w, m.frequency);
    return w;
}

}  // namespace

std::vector<BathSpec> apply_default_filters(Scenario scenario, const SystemConfig& config,
                                            std::vector<BathSpec> baths) {
    if (scenario == Scenario::full) return baths;  // unfiltered model by definition
    const double wa = config.optical.frequency;
    const double wmin = min_mech_frequency(config);
    const double wmax = max_mech_frequency(config);
    const double w1 = config.mechanical.front().frequency;
    const bool degenerate = wmin == wmax;
    for (auto& b : baths) {
        if (b.filter) continue;
        if (b.label == "C") {
            b.filter = FilterSpec{wa, FilterMode::hard_window, wmin};
        } else if (b.label == "H") {
            const double center = scenario == Scenario::cooling ? wa - w1 : wa + w1;
            if (degenerate) {
                b.filter = FilterSpec{center, FilterMode::hard_window, wmin};
            } else {
                // Peak on the first resonator's sideband; detuned sidebands
                // are passed with Lorentzian attenuation.
                b.filter = FilterSpec{center, FilterMode::lorentzian_fixed, 0.25 * wmin};
            }
        }
    }
    return baths;
}

std::vector<ChannelSpec> channel_table(Scenario scenario, const SystemConfig& config,
                                       const std::vector<BathSpec>& baths_in) {
    config.validate();
    check_bath_roles(config, baths_in);
    const auto baths = apply_default_filters(scenario, config, baths_in);
    const BathSpec& hot = find_bath(baths, "H");
    const BathSpec& cold = find_bath(baths, "C");
    const double wa = config.optical.frequency;

    std::vector<ChannelSpec> out;
    const auto mech_name = [](int i) { return "b" + std::to_string(i + 1); };

    if (scenario == Scenario::full) {
        for (const BathSpec* b : {&hot, &cold}) {
            out.push_back({b->label + ":a", wa, spectrum(wa, *b), -1, 0, -1});
            out.push_back({b->label + ":a†", -wa, spectrum(-wa, *b), +1, 0, -1});
        }
        for (std::size_t i = 0; i < config.mechanical.size(); ++i) {
            const double z2 = config.zeta(i) * config.zeta(i);
            const double wm = wa - config.mechanical[i].frequency;
            const double wp = wa + config.mechanical[i].frequency;
            const auto both = [&](double w) { return spectrum(w, hot) + spectrum(w, cold); };
            const std::string bn = mech_name(int(i));
            out.push_back({"HC:a·" + bn + "†", wm, z2 * both(wm), -1, +1, int(i)});
            out.push_back({"HC:a†·" + bn, -wm, z2 * both(-wm), +1, -1, int(i)});
            out.push_back({"HC:a·" + bn, wp, z2 * both(wp), -1, -1, int(i)});
            out.push_back({"HC:a†·" + bn + "†", -wp, z2 * both(-wp), +1, +1, int(i)});
        }
    } else {
        out.push_back({"C:a", wa, bath_rate(wa, cold), -1, 0, -1});
        out.push_back({"C:a†", -wa, bath_rate(-wa, cold), +1, 0, -1});
        for (std::size_t i = 0; i < config.mechanical.size(); ++i) {
            const double z2 = config.zeta(i) * config.zeta(i);
            const std::string bn = mech_name(int(i));
            if (scenario == Scenario::cooling) {
                const double wm = wa - config.mechanical[i].frequency;
                out.push_back({"H:a·" + bn + "†", wm, z2 * bath_rate(wm, hot), -1, +1, int(i)});
                out.push_back({"H:a†·" + bn, -wm, z2 * bath_rate(-wm, hot), +1, -1, int(i)});
            } else {
                const double wp = wa + config.mechanical[i].frequency;
                out.push_back({"H:a·" + bn, wp, z2 * bath_rate(wp, hot), -1, -1, int(i)});
                out.push_back({"H:a†·" + bn + "†", -wp, z2 * bath_rate(-wp, hot), +1, +1, int(i)});
            }
        }
    }
    for (std::size_t i = 0; i < config.mechanical.size(); ++i) {
        const BathSpec& mb = find_bath(baths, config.mechanical[i].label);
        const double wi = config.mechanical[i].frequency;
        const std::string bn = mech_name(int(i));
        out.push_back({mb.label + ":" + bn, wi, spectrum(wi, mb), 0, -1, int(i)});
        out.push_back({mb.label + ":" + bn + "†", -wi, spectrum(-wi, mb), 0, +1, int(i)});
    }
    return out;
}

std::vector<std::string> weak_coupling_warnings(const SystemConfig& config,
                                                const std::vector<BathSpec>& baths) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < config.mechanical.size(); ++i) {
        const auto& mode = config.mechanical[i];
        const BathSpec& b = find_bath(baths, mode.label);
        const double nbar = bose_occupation(mode.frequency, b.temperature);
        const double wcp = weak_coupling_parameter(config, i, nbar);
        if (wcp > 0.1) {
            out.push_back("mode '" + mode.label + "': zeta^2 * nbar = " +
                          std::to_string(wcp) + " exceeds 0.1; weak-coupling model degrades");
        }
    }
    return out;
}

}  // namespace optocool
