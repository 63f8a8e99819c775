#pragma once

#include <cmath>
#include <stdexcept>

// Parameter records for the LEO-to-ground acquisition model. All quantities
// are SI (meters, radians, seconds, watts, amperes); unit conversions happen
// only at the configuration boundary (see scenario.hpp).

namespace leoacq {

// Static link-budget inputs.
struct LinkParams {
    double distance_m;        // far-field propagation distance R
    double loss_tx;           // transmitter loss s_t, in (0,1]
    double loss_rx;           // receiver loss s_r, in (0,1]
    double split_ratio;       // acquisition split fraction s_s, in (0,1]
    double aperture_m;        // receiver aperture diameter D_r
    double responsivity_a_w;  // photoelectric response R_r
    double noise_std_a;       // noise current std sigma_n; N_0 = sigma_n^2
    double snr_threshold_db;  // average SNR threshold Q, in dB
    double power_w;           // transmit power P_t

    double noise_power() const { return noise_std_a * noise_std_a; }
    double snr_linear() const { return std::pow(10.0, snr_threshold_db / 10.0); }

    void validate() const;
};

// Gamma-Gamma turbulence triple (gamma, alpha, beta).
struct TurbulenceParams {
    double gamma;  // mean scale
    double alpha;  // large-scale effective number
    double beta;   // small-scale effective number

    void validate() const;
};

// Platform vibration. vib_freq_hz enters only the physical Monte Carlo mode;
// every analytical formula uses sigma_rad alone.
struct VibrationParams {
    double sigma_rad;    // isotropic pointing-jitter std
    double vib_freq_hz;  // vibration sampling rate F_V

    void validate() const;
};

// Scan geometry and timing.
struct ScanParams {
    double omega_rad;    // beam divergence angle (1/e^2)
    double pitch_rad;    // spiral pitch d
    double fou_rad;      // field-of-uncertainty radius U
    double speed_rad_s;  // scan speed v
    double reset_s;      // inter-scan reset time T_a
    double field_prob;   // field detection probability P_V
    double kappa_rad;    // initial LoS error std (Rayleigh scale)

    void validate() const;
};

// Quantities derived from a link budget at a fixed divergence angle.
struct DerivedBudget {
    double link_constant;        // B, rad^2
    double coverage_radius_rad;  // g_{B,sigma}(omega) = tau*d
    double omega_max_rad;        // divergence bound above which g is undefined
};

// Table-1 turbulence presets, level 1 (very weak) .. 5 (very strong).
inline TurbulenceParams turbulence_preset(int level) {
    switch (level) {
        case 1: return {0.90, 21.6, 19.8};
        case 2: return {0.58, 8.43, 6.92};
        case 3: return {0.36, 4.03, 1.54};
        case 4: return {0.27, 4.58, 1.24};
        case 5: return {0.21, 6.07, 1.08};
        default: throw std::out_of_range("turbulence preset level must be 1..5");
    }
}

}  // namespace leoacq
