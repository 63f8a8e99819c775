#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "leoacq/params.hpp"

// Scenario files: flat `key = value` lines with `#` comments. Units are
// encoded in key names (distance_km, pitch_d_urad, kappa_mrad, ...) and the
// raw values are kept verbatim so a dump re-parses to the identical scenario.
// Turbulence comes either from a named preset (`turb = turb3`) or an explicit
// gamma/alpha/beta triple.

namespace leoacq {

struct ScenarioError : std::runtime_error {
    ScenarioError(int line_, std::string key_, const std::string& message)
        : std::runtime_error(message), line(line_), key(std::move(key_)) {}
    int line;         // 0 when not tied to a specific line
    std::string key;  // empty when not tied to a specific key
};

struct Scenario {
    // link budget
    double distance_km;
    double loss_tx;
    double loss_rx;
    double split_ratio;
    double aperture_dr_cm;
    double responsivity_a_w;
    double noise_na;
    double snr_db;
    double power_pt_mw;
    // vibration
    double sigma_urad;
    double vib_freq_hz;
    // scan
    double omega_urad;
    double pitch_d_urad;
    double fou_u_mrad;
    double speed_v_mrad_s;
    double reset_s;
    double p_v;
    double kappa_mrad;
    // turbulence
    std::optional<int> turb_preset;  // 1..5 when `turb = turbN` was given
    double gamma;
    double alpha;
    double beta;

    bool operator==(const Scenario&) const = default;

    LinkParams link() const;
    TurbulenceParams turbulence() const;
    VibrationParams vibration() const;
    ScanParams scan() const;
};

Scenario parse_scenario(std::istream& in);
Scenario load_scenario(const std::string& path);
std::string dump_scenario(const Scenario& sc);

// Shortest decimal representation that re-parses to the same double.
std::string format_double(double value);

}  // namespace leoacq
