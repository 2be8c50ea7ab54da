// Thermal bath coupling spectra: Bose occupation, KMS-consistent Ohmic and
// flat spectra, Lorentzian/hard-window pass filters, and per-scenario
// Lindblad channel tables.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "optocool/fock.hpp"

namespace optocool {

enum class SpectrumFamily { ohmic, flat };

// hard_window: unit transmission inside |w - center| <= width/2, zero
// outside. lorentzian: unit-peak Lorentzian window whose half-width is the
// larger of pi*G(w) and width (rate-following). lorentzian_fixed: half-width
// exactly width, independent of the rate.
enum class FilterMode { hard_window, lorentzian, lorentzian_fixed };

struct FilterSpec {
    double center = 1.0;  // pass-band center, > 0
    FilterMode mode = FilterMode::hard_window;
    double width = 1.0;   // full width (hard) / half-width (lorentzian modes)

    void validate() const;
};

struct BathSpec {
    std::string label;       // "H", "C", or the mechanical mode label
    double temperature = 1.0;  // > 0, units of omega_a
    double coupling = 0.0;     // kappa_x >= 0
    SpectrumFamily family = SpectrumFamily::ohmic;
    std::optional<FilterSpec> filter;

    void validate() const;
};

// Mean quanta 1/(e^{w/T} - 1); evaluated at positive frequency only.
// Underflow for w/T beyond double range clamps to 0.
double bose_occupation(double frequency, double temperature);

// KMS spectrum: kappa(w)[1 + nbar(w)] for w > 0, kappa(|w|) nbar(|w|) for
// w < 0, with kappa(w) = coupling * w (ohmic) or coupling (flat).
double spectrum(double frequency, const BathSpec& bath);

// Spectrum through the bath's pass filter. The window is evaluated at |w|
// and applied to both signs, so the KMS ratio is preserved.
double filtered_spectrum(double frequency, const BathSpec& bath);

// filtered_spectrum when a filter is configured, plain spectrum otherwise.
double bath_rate(double frequency, const BathSpec& bath);

enum class Scenario { full, cooling, heating };

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& s);

// One Lindblad channel of the scenario master equation: which ladder
// operators it is built from and the evaluated rate. optical_op/mech_op:
// -1 lowering, +1 raising, 0 absent; mech_index is -1 for optical-only
// channels.
struct ChannelSpec {
    std::string label;
    double frequency = 0.0;  // signed spectrum argument
    double rate = 0.0;
    int optical_op = 0;
    int mech_op = 0;
    int mech_index = -1;
};

// Bath list with the scenario's default pass filters injected on the
// optical baths wherever none were configured. Mechanical baths are never
// filtered. The cold window is centered on the cavity frequency. The hot
// filter sits on the first resonator's lower (cooling) or upper (heating)
// sideband: a hard window when every resonator shares one sideband, and a
// fixed-width Lorentzian peak otherwise, so detuned sidebands are driven
// with attenuation.
std::vector<BathSpec> apply_default_filters(Scenario scenario, const SystemConfig& config,
                                            std::vector<BathSpec> baths);

// Every Lindblad channel of the scenario with its evaluated rate.
// Requires exactly one H bath, one C bath and one bath per mechanical mode.
std::vector<ChannelSpec> channel_table(Scenario scenario, const SystemConfig& config,
                                       const std::vector<BathSpec>& baths);

const BathSpec& find_bath(const std::vector<BathSpec>& baths, const std::string& label);

// zeta_i^2 nbar_i > 0.1 warnings, one string per offending mode.
std::vector<std::string> weak_coupling_warnings(const SystemConfig& config,
                                                const std::vector<BathSpec>& baths);

}  // namespace optocool
