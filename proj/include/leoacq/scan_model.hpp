#pragma once

#include "leoacq/params.hpp"

// Archimedean-spiral scan geometry, the coverage-factor distribution and its
// CDF, the probability chain P_SNR -> P_R -> P_S, and single-scan timing.

namespace leoacq {

// Selects between an exact closed form and its wide-field approximation.
enum class ApproxMode { Exact, Approx };

// Probability chain of a single scan. tau is clamped to 1/2 once the coverage
// radius spans half the pitch (saturation).
struct ProbabilityChain {
    double tau;    // coverage factor
    double p_snr;  // P(received average SNR over threshold)
    double p_r;    // receiver feedback probability P_V * P_SNR
    double p_u;    // P(receiver inside FOU)
    double p_s;    // single-scan acquisition probability P_U * P_R
};

// Spiral radius at polar angle theta: (d / 2 pi) * theta.
double spiral_radius(double theta_rad, double pitch_rad);

// P(Rayleigh(kappa) <= radius); serves both P_V-from-V and P_U-from-U.
double rayleigh_within(double radius_rad, double kappa_rad);

// Inverse of rayleigh_within: the radius containing the given probability
// mass (e.g. the receiver field half-angle V that realizes a target P_V).
double rayleigh_quantile(double prob, double kappa_rad);

// Density of the coverage factor tau on [0, 1/2].
double coverage_factor_pdf(double tau, double pitch_rad, double kappa_rad);

// CDF of the coverage factor: exact closed form or the 2*tau wide-field limit.
double snr_exceed_prob(double tau, double pitch_rad, double kappa_rad,
                       ApproxMode mode = ApproxMode::Approx);

// Full chain for a scan configuration and coverage radius g. The model default
// is the 2*tau approximation of P_SNR; the exact CDF is selectable.
ProbabilityChain probability_chain(const ScanParams& scan, double coverage_radius_rad,
                                   ApproxMode mode = ApproxMode::Approx);

// Arc length (in angle space) spiralled through before reaching radius rho_r.
double spiral_length(double rho_r_rad, double pitch_rad,
                     ApproxMode mode = ApproxMode::Approx);

// Time to spiral out to rho_r at constant speed: pi rho_r^2 / (v d).
double single_scan_time(double rho_r_rad, const ScanParams& scan);

// Time to sweep the complete FOU: pi U^2 / (v d).
double fou_scan_time(const ScanParams& scan);

// Expected duration of a successful single scan (conditioned on the receiver
// being inside the FOU, weighted by P_U).
double single_scan_expected_time(const ScanParams& scan);

// Radial distance from a receiver at (rho_r, theta_r) to the nearest spiral
// arm along its own polar angle, the metric the coverage-factor law is
// derived under. The origin (scan start) counts as an arm.
double nearest_arm_distance(double rho_r_rad, double theta_r_rad, double pitch_rad);

// True Euclidean distance from (rho_r, theta_r) to the spiral curve.
// Diagnostic alternative to the radial metric above.
double spiral_curve_distance(double rho_r_rad, double theta_r_rad, double pitch_rad);

}  // namespace leoacq
