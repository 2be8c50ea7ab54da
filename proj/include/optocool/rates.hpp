// Closed-form rate model: effective phonon transition rates, steady-state
// occupations, heating transients and the flat-coupling rate-equation
// limit. Exponentials of omega/T are evaluated through expm1 so extreme
// temperature ratios underflow to zero instead of overflowing.
#pragma once

#include <optional>
#include <utility>

#include "optocool/bath.hpp"
#include "optocool/fock.hpp"

namespace optocool {

struct RateSet {
    double A_minus = 0.0;     // downward phonon rate from the optical baths
    double A_plus = 0.0;      // upward phonon rate from the optical baths
    double A_th_minus = 0.0;  // mechanical-bath downward rate G_i(+omega_i)
    double A_th_plus = 0.0;   // mechanical-bath upward rate G_i(-omega_i)
    double Gamma = 0.0;       // A_minus - A_plus
    Scenario scenario = Scenario::cooling;
};

// Steady cavity occupation fed by the cold and mechanical baths, in the
// detailed-balance form
//   [G_C(-w_a) + sum_i G_i(-w_i)] /
//   [(G_C(w_a) - G_C(-w_a)) + sum_i (G_i(w_i) - G_i(-w_i))].
double cavity_occupation_ss(const SystemConfig& config, const std::vector<BathSpec>& baths);

// Same numerator over the plain sum of all four spectra. Kept for
// comparison; overweights the downward rates by G(-w) and is measurably
// off once the cold-bath occupation is not small.
double cavity_occupation_ss_verbatim(const SystemConfig& config,
                                     const std::vector<BathSpec>& baths);

// Full RateSet for resonator i under the scenario. The cavity occupation
// defaults to cavity_occupation_ss.
RateSet scenario_rates(std::size_t i, Scenario scenario, const SystemConfig& config,
                       const std::vector<BathSpec>& baths,
                       std::optional<double> cavity_occupation = std::nullopt);

// Unfiltered (full-scenario) rates for the first resonator.
RateSet unfiltered_rates(const SystemConfig& config, const std::vector<BathSpec>& baths,
                         double cavity_occupation);

// Steady phonon number (A_plus + kappa_1 nbar_1) / (Gamma + kappa_1).
// kappa_1 is the effective mechanical damping G_1(w_1) - G_1(-w_1) and
// kappa_1 * nbar_1 its pump G_1(-w_1). Throws when the denominator is not
// positive.
double phonon_ss_cooling(const RateSet& rates, double kappa_1, double nbar_1);

// Per-resonator steady phonon number; resonators are independent.
double phonon_ss_multi(std::size_t i, const SystemConfig& config,
                       const std::vector<BathSpec>& baths);

// Heating transient, printed form:
//   (A_plus + kappa_1 nbar_1)/(Gamma + kappa_1) + nbar_1 e^{-t(Gamma+kappa_1)}.
// Note the t = 0 value is offset from nbar_1 by the steady-state term; see
// phonon_transient_exact for the initial-value-consistent solution.
double phonon_transient_heating(const RateSet& rates, double kappa_1, double nbar_1, double t);

// Exact solution of dn/dt = (A_plus + kappa_1 nbar_1) - n (Gamma + kappa_1)
// with n(0) = n0.
double phonon_transient_exact(const RateSet& rates, double kappa_1, double nbar_1, double n0,
                              double t);

// Laser sideband-cooling comparison helper over caller-supplied rates:
// (A_plus + kappa_1 nbar_1) / (A_minus - A_plus + kappa_1).
double laser_cooling_ss(double A_minus, double A_plus, double kappa_1, double nbar_1);

// Effective mechanical damping / pump of one bath at frequency omega.
double mechanical_damping(const BathSpec& bath, double omega);  // G(w) - G(-w)
double mechanical_pump(const BathSpec& bath, double omega);     // G(-w)

// Flat-coupling rate-equation model in the infinite hot-bath-temperature
// limit: relaxation rates and inverse temperatures.
struct AppendixRates {
    double gamma_c = 0.0;
    double gamma_h = 0.0;
    double gamma_1 = 0.0;
    double beta_c = 1.0;
    double beta_h = 1.0;
    double beta_1 = 1.0;
};

struct ModeFrequencies {
    double omega_a = 1.0;
    double omega_1 = 1.0;
};

// Right-hand side of the coupled photon/phonon rate equations
// (d<n_a>/dt, d<n_1>/dt) at the given occupations.
std::pair<double, double> appendix_ode_rhs(std::pair<double, double> state,
                                           const AppendixRates& rates,
                                           const ModeFrequencies& omegas);

// Closed-form stationary phonon number of the rate equations.
double appendix_ss(const AppendixRates& rates, const ModeFrequencies& omegas);

// Ohmic-substitution closed form
//   (w_a k_c nbar_c + w_1 k_1 nbar_1) / (w_a k_c + w_1 k_1).
double appendix_ss_ohmic(double omega_a, double kappa_c, double nbar_c, double omega_1,
                         double kappa_1, double nbar_1);

}  // namespace optocool
