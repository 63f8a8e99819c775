#include "leoacq/link_budget.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace leoacq {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
}

// s_t * s_r * s_s * D_r^2 / (2 R^2): the geometric prefactor shared by
// h_t, E[h_t^2], P_t and B.
double geometry_factor(const LinkParams& link) {
    return link.loss_tx * link.loss_rx * link.split_ratio *
           link.aperture_m * link.aperture_m /
           (2.0 * link.distance_m * link.distance_m);
}

}  // namespace

void LinkParams::validate() const {
    require(distance_m > 0, "link: distance must be positive");
    require(loss_tx > 0 && loss_tx <= 1, "link: loss_tx must be in (0,1]");
    require(loss_rx > 0 && loss_rx <= 1, "link: loss_rx must be in (0,1]");
    require(split_ratio > 0 && split_ratio <= 1, "link: split_ratio must be in (0,1]");
    require(aperture_m > 0, "link: aperture must be positive");
    require(responsivity_a_w > 0, "link: responsivity must be positive");
    require(noise_std_a > 0, "link: noise std must be positive");
    require(power_w > 0, "link: power must be positive");
}

void TurbulenceParams::validate() const {
    require(gamma > 0 && alpha > 0 && beta > 0,
            "turbulence: gamma, alpha, beta must be positive");
}

void VibrationParams::validate() const {
    require(sigma_rad >= 0, "vibration: sigma must be non-negative");
    require(vib_freq_hz > 0, "vibration: frequency must be positive");
}

void ScanParams::validate() const {
    require(omega_rad > 0, "scan: omega must be positive");
    require(pitch_rad > 0, "scan: pitch must be positive");
    require(fou_rad > 0, "scan: FOU must be positive");
    require(speed_rad_s > 0, "scan: speed must be positive");
    require(reset_s >= 0, "scan: reset time must be non-negative");
    require(field_prob >= 0 && field_prob <= 1, "scan: P_V must be in [0,1]");
    require(kappa_rad > 0, "scan: kappa must be positive");
}

double turbulence_second_moment(const TurbulenceParams& turb) {
    turb.validate();
    return (turb.alpha + 1.0) * (turb.beta + 1.0) * turb.gamma * turb.gamma /
           (turb.alpha * turb.beta);
}

namespace detail {

double bessel_i0_scaled(double x) {
    // Power series of I0 is accurate and overflow-free up to moderate x;
    // beyond that the asymptotic expansion of exp(-x) I0(x) takes over
    // (its k=7 term is below 1e-11 at x = 50).
    if (x < 0) x = -x;
    if (x <= 50.0) {
        double term = 1.0, sum = 1.0;
        const double q = 0.25 * x * x;
        for (int k = 1; k < 200; ++k) {
            term *= q / (static_cast<double>(k) * k);
            sum += term;
            if (term < sum * 1e-18) break;
        }
        return std::exp(-x) * sum;
    }
    double sum = 1.0, term = 1.0;
    const double inv8x = 1.0 / (8.0 * x);
    for (int k = 1; k <= 7; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= odd * odd * inv8x / static_cast<double>(k);
        sum += term;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

}  // namespace detail

double rice_pdf(double phi_rad, double mean_offset_rad, double sigma_rad) {
    if (phi_rad < 0) throw std::domain_error("rice_pdf: phi must be non-negative");
    if (sigma_rad <= 0)
        throw std::domain_error("rice_pdf: sigma must be positive (density degenerates at 0)");
    const double s2 = sigma_rad * sigma_rad;
    // exp(-(phi^2+o^2)/(2s^2)) I0(phi o / s^2) = exp(-(phi-o)^2/(2s^2)) * [e^-z I0(z)]
    const double z = phi_rad * mean_offset_rad / s2;
    const double diff = phi_rad - mean_offset_rad;
    return phi_rad / s2 * std::exp(-diff * diff / (2.0 * s2)) * detail::bessel_i0_scaled(z);
}

double pointing_gain(double phi_rad, double omega_rad, const LinkParams& link) {
    if (omega_rad <= 0) throw std::domain_error("pointing_gain: omega must be positive");
    const double w2 = omega_rad * omega_rad;
    return geometry_factor(link) / w2 * std::exp(-2.0 * phi_rad * phi_rad / w2);
}

double pointing_gain_second_moment(double omega_rad, double mean_offset_rad,
                                   double sigma_rad, const LinkParams& link) {
    if (omega_rad <= 0)
        throw std::domain_error("pointing_gain_second_moment: omega must be positive");
    if (sigma_rad < 0)
        throw std::domain_error("pointing_gain_second_moment: sigma must be non-negative");
    const double gf = geometry_factor(link);
    const double w2 = omega_rad * omega_rad;
    const double w2s = w2 + 8.0 * sigma_rad * sigma_rad;
    return gf * gf / (w2 * w2s) *
           std::exp(-4.0 * mean_offset_rad * mean_offset_rad / w2s);
}

double required_power(double omega_rad, double pitch_rad, double tau,
                      const LinkParams& link, const TurbulenceParams& turb,
                      double sigma_rad) {
    if (tau < 0 || tau > 0.5)
        throw std::domain_error("required_power: tau must be in [0, 1/2]");
    if (omega_rad <= 0) throw std::domain_error("required_power: omega must be positive");
    link.validate();
    turb.validate();
    const double w2s = omega_rad * omega_rad + 8.0 * sigma_rad * sigma_rad;
    const double offset = tau * pitch_rad;
    const double snr_noise = link.snr_linear() * link.noise_power() * turb.alpha * turb.beta /
                             ((turb.alpha + 1.0) * (turb.beta + 1.0));
    return std::sqrt(snr_noise) / (geometry_factor(link) * turb.gamma * link.responsivity_a_w) *
           omega_rad * std::sqrt(w2s) * std::exp(2.0 * offset * offset / w2s);
}

double link_constant(const LinkParams& link, const TurbulenceParams& turb) {
    link.validate();
    turb.validate();
    if (link.noise_power() <= 0) throw std::domain_error("link_constant: zero noise power");
    return link.power_w * geometry_factor(link) * turb.gamma * link.responsivity_a_w *
           std::sqrt((turb.alpha + 1.0) * (turb.beta + 1.0) /
                     (link.snr_linear() * link.noise_power() * turb.alpha * turb.beta));
}

double coverage_radius(double omega_rad, double link_constant_b, double sigma_rad) {
    if (omega_rad <= 0) throw std::domain_error("coverage_radius: omega must be positive");
    if (link_constant_b <= 0) throw std::domain_error("coverage_radius: B must be positive");
    const double w2s = omega_rad * omega_rad + 8.0 * sigma_rad * sigma_rad;
    const double lg = std::log(link_constant_b / (omega_rad * std::sqrt(w2s)));
    if (lg < 0)
        throw std::domain_error("coverage_radius: omega exceeds the divergence bound");
    return std::sqrt(0.5 * w2s * lg);
}

double max_divergence(double link_constant_b, double sigma_rad) {
    if (link_constant_b <= 0) throw std::domain_error("max_divergence: B must be positive");
    const double s2 = sigma_rad * sigma_rad;
    return std::sqrt(std::sqrt(link_constant_b * link_constant_b + 16.0 * s2 * s2) -
                     4.0 * s2);
}

DerivedBudget derive_budget(const LinkParams& link, const TurbulenceParams& turb,
                            const VibrationParams& vib, double omega_rad) {
    const double b = link_constant(link, turb);
    DerivedBudget out;
    out.link_constant = b;
    out.omega_max_rad = max_divergence(b, vib.sigma_rad);
    out.coverage_radius_rad = coverage_radius(omega_rad, b, vib.sigma_rad);
    return out;
}

}  // namespace leoacq
