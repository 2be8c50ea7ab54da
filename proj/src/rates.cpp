#include "optocool/rates.hpp"

#include <cmath>

#include "optocool/liouvillian.hpp"

namespace optocool {

namespace {

// Optical-bath spectra entering the cavity occupation are filtered when a
// filter is configured, mechanical ones never are.
struct CavityTerms {
    double down = 0.0;  // sum of G(+w) over baths
    double up = 0.0;    // sum of G(-w) over baths
};

CavityTerms cavity_terms(const SystemConfig& config, const std::vector<BathSpec>& baths) {
    config.validate();
    CavityTerms t;
    const BathSpec& cold = find_bath(baths, "C");
    const double wa = config.optical.frequency;
    t.down += bath_rate(wa, cold);
    t.up += bath_rate(-wa, cold);
    for (const auto& mode : config.mechanical) {
        const BathSpec& mb = find_bath(baths, mode.label);
        t.down += spectrum(mode.frequency, mb);
        t.up += spectrum(-mode.frequency, mb);
    }
    return t;
}

}  // namespace

double cavity_occupation_ss(const SystemConfig& config, const std::vector<BathSpec>& baths) {
    const auto t = cavity_terms(config, baths);
    return t.up / (t.down - t.up);
}

double cavity_occupation_ss_verbatim(const SystemConfig& config,
                                     const std::vector<BathSpec>& baths) {
    const auto t = cavity_terms(config, baths);
    return t.up / (t.down + t.up);
}

RateSet scenario_rates(std::size_t i, Scenario scenario, const SystemConfig& config,
                       const std::vector<BathSpec>& baths,
                       std::optional<double> cavity_occupation) {
    const auto filtered = apply_default_filters(scenario, config, baths);
    const double na = cavity_occupation ? *cavity_occupation
                                        : cavity_occupation_ss(config, filtered);
    const auto [down, up] = reduced_resonator_generator(i, scenario, config, baths, na);
    const auto& mode = config.mechanical.at(i);
    const BathSpec& mb = find_bath(baths, mode.label);
    RateSet r;
    r.A_minus = down;
    r.A_plus = up;
    r.A_th_minus = spectrum(mode.frequency, mb);
    r.A_th_plus = spectrum(-mode.frequency, mb);
    r.Gamma = down - up;
    r.scenario = scenario;
    return r;
}

RateSet unfiltered_rates(const SystemConfig& config, const std::vector<BathSpec>& baths,
                         double cavity_occupation) {
    return scenario_rates(0, Scenario::full, config, baths, cavity_occupation);
}

double phonon_ss_cooling(const RateSet& rates, double kappa_1, double nbar_1) {
    const double den = rates.Gamma + kappa_1;
    if (!(den > 0.0))
        throw InstabilityError("phonon_ss_cooling: Gamma + kappa_1 = " + std::to_string(den) +
                               " is not positive; the steady-state formula does not apply");
    return (rates.A_plus + kappa_1 * nbar_1) / den;
}

double phonon_ss_multi(std::size_t i, const SystemConfig& config,
                       const std::vector<BathSpec>& baths) {
    const RateSet r = scenario_rates(i, Scenario::cooling, config, baths);
    const auto& mode = config.mechanical.at(i);
    const BathSpec& mb = find_bath(baths, mode.label);
    const double k_eff = mechanical_damping(mb, mode.frequency);
    const double nbar = bose_occupation(mode.frequency, mb.temperature);
    return phonon_ss_cooling(r, k_eff, nbar);
}

double phonon_transient_heating(const RateSet& rates, double kappa_1, double nbar_1, double t) {
    const double den = rates.Gamma + kappa_1;
    const double ss = (rates.A_plus + kappa_1 * nbar_1) / den;
    return ss + nbar_1 * std::exp(-t * den);
}

double phonon_transient_exact(const RateSet& rates, double kappa_1, double nbar_1, double n0,
                              double t) {
    const double den = rates.Gamma + kappa_1;
    const double src = rates.A_plus + kappa_1 * nbar_1;
    if (den == 0.0) return n0 + src * t;
    const double ss = src / den;
    return ss + (n0 - ss) * std::exp(-t * den);
}

double laser_cooling_ss(double A_minus, double A_plus, double kappa_1, double nbar_1) {
    return (A_plus + kappa_1 * nbar_1) / (A_minus - A_plus + kappa_1);
}

double mechanical_damping(const BathSpec& bath, double omega) {
    return spectrum(omega, bath) - spectrum(-omega, bath);
}

double mechanical_pump(const BathSpec& bath, double omega) { return spectrum(-omega, bath); }

std::pair<double, double> appendix_ode_rhs(std::pair<double, double> state,
                                           const AppendixRates& r,
                                           const ModeFrequencies& omegas) {
    const auto [na, n1] = state;
    if (!(na >= 0.0) || !(n1 >= 0.0))
        throw std::invalid_argument("appendix_ode_rhs: occupations must be >= 0");
    const double xc = std::exp(-r.beta_c * omegas.omega_a);
    const double x1 = std::exp(-r.beta_1 * omegas.omega_1);
    const double dna = -r.gamma_c * (1.0 - xc) * na + r.gamma_c * xc + r.gamma_h * (n1 - na);
    const double dn1 = -r.gamma_1 * (1.0 - x1) * n1 + r.gamma_1 * x1 + r.gamma_h * (na - n1);
    return {dna, dn1};
}

double appendix_ss(const AppendixRates& r, const ModeFrequencies& omegas) {
    const double xc = std::exp(-r.beta_c * omegas.omega_a);
    const double x1 = std::exp(-r.beta_1 * omegas.omega_1);
    const double num = r.gamma_c * xc + r.gamma_1 * x1;
    const double den = r.gamma_c + r.gamma_1 - num;
    if (!(den > 0.0))
        throw InstabilityError("appendix_ss: non-positive denominator");
    return num / den;
}

double appendix_ss_ohmic(double omega_a, double kappa_c, double nbar_c, double omega_1,
                         double kappa_1, double nbar_1) {
    const double den = omega_a * kappa_c + omega_1 * kappa_1;
    if (!(den > 0.0))
        throw InstabilityError("appendix_ss_ohmic: non-positive denominator");
    return (omega_a * kappa_c * nbar_c + omega_1 * kappa_1 * nbar_1) / den;
}

}  // namespace optocool
