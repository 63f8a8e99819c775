#pragma once

#include "leoacq/params.hpp"

// Transmitted-power <-> received-SNR relationship under platform vibration
// and Gamma-Gamma turbulence, and the coverage radius g_{B,sigma}(omega) it
// induces on the scan plane. All functions are pure and thread-safe.

namespace leoacq {

// E[h_c^2] = (alpha+1)(beta+1)gamma^2 / (alpha beta) for the Gamma-Gamma channel.
double turbulence_second_moment(const TurbulenceParams& turb);

// Rice density of the pointing deviation phi about mean_offset with jitter sigma.
double rice_pdf(double phi_rad, double mean_offset_rad, double sigma_rad);

// Instantaneous transmission gain h_t(phi) of a Gaussian beam with a uniform
// receiver-aperture intensity assumption.
double pointing_gain(double phi_rad, double omega_rad, const LinkParams& link);

// E[h_t^2] with phi Rice-distributed (mean offset, jitter sigma).
double pointing_gain_second_moment(double omega_rad, double mean_offset_rad,
                                   double sigma_rad, const LinkParams& link);

// Transmit power needed so the average SNR at deflection tau*d meets the threshold.
double required_power(double omega_rad, double pitch_rad, double tau,
                      const LinkParams& link, const TurbulenceParams& turb,
                      double sigma_rad);

// Link constant B (rad^2): aggregates power, losses, geometry, turbulence and
// the SNR threshold; the single knob coupling the budget to scan geometry.
double link_constant(const LinkParams& link, const TurbulenceParams& turb);

// Coverage radius g_{B,sigma}(omega) = tau*d delivered by link constant B.
// Throws std::domain_error once the log argument drops below 1 (omega too wide).
double coverage_radius(double omega_rad, double link_constant_b, double sigma_rad);

// Largest divergence angle for which the coverage radius stays real.
double max_divergence(double link_constant_b, double sigma_rad);

// Budget summary at a fixed divergence angle.
DerivedBudget derive_budget(const LinkParams& link, const TurbulenceParams& turb,
                            const VibrationParams& vib, double omega_rad);

namespace detail {
// Exponentially scaled modified Bessel function exp(-x) * I0(x), x >= 0.
double bessel_i0_scaled(double x);
}  // namespace detail

}  // namespace leoacq
