#include "leoacq/scan_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace leoacq {

namespace {
constexpr double kPi = std::numbers::pi;
}

double spiral_radius(double theta_rad, double pitch_rad) {
    if (theta_rad < 0) throw std::domain_error("spiral_radius: theta must be non-negative");
    return pitch_rad / (2.0 * kPi) * theta_rad;
}

double rayleigh_within(double radius_rad, double kappa_rad) {
    if (radius_rad < 0) throw std::domain_error("rayleigh_within: radius must be non-negative");
    if (kappa_rad <= 0) throw std::domain_error("rayleigh_within: kappa must be positive");
    return -std::expm1(-radius_rad * radius_rad / (2.0 * kappa_rad * kappa_rad));
}

double rayleigh_quantile(double prob, double kappa_rad) {
    if (prob < 0 || prob >= 1)
        throw std::domain_error("rayleigh_quantile: probability must be in [0,1)");
    if (kappa_rad <= 0) throw std::domain_error("rayleigh_quantile: kappa must be positive");
    return kappa_rad * std::sqrt(-2.0 * std::log1p(-prob));
}

double coverage_factor_pdf(double tau, double pitch_rad, double kappa_rad) {
    if (tau < 0 || tau > 0.5)
        throw std::domain_error("coverage_factor_pdf: tau must be in [0, 1/2]");
    const double c = pitch_rad * pitch_rad / (kappa_rad * kappa_rad);
    return ((1.0 - 2.0 * tau) * tau * c + 2.0) * std::exp(-0.5 * tau * tau * c);
}

double snr_exceed_prob(double tau, double pitch_rad, double kappa_rad, ApproxMode mode) {
    if (tau < 0 || tau > 0.5)
        throw std::domain_error("snr_exceed_prob: tau must be in [0, 1/2]");
    if (mode == ApproxMode::Approx) return 2.0 * tau;
    const double c = pitch_rad * pitch_rad / (kappa_rad * kappa_rad);
    return 1.0 + (2.0 * tau - 1.0) * std::exp(-0.5 * tau * tau * c);
}

ProbabilityChain probability_chain(const ScanParams& scan, double coverage_radius_rad,
                                   ApproxMode mode) {
    if (coverage_radius_rad < 0)
        throw std::domain_error("probability_chain: coverage radius must be non-negative");
    scan.validate();
    ProbabilityChain out;
    out.tau = std::min(coverage_radius_rad / scan.pitch_rad, 0.5);
    out.p_snr = snr_exceed_prob(out.tau, scan.pitch_rad, scan.kappa_rad, mode);
    out.p_r = scan.field_prob * out.p_snr;
    out.p_u = rayleigh_within(scan.fou_rad, scan.kappa_rad);
    out.p_s = out.p_u * out.p_r;
    return out;
}

double spiral_length(double rho_r_rad, double pitch_rad, ApproxMode mode) {
    if (rho_r_rad < 0) throw std::domain_error("spiral_length: rho must be non-negative");
    const double a = pitch_rad / (2.0 * kPi);
    if (mode == ApproxMode::Approx) return rho_r_rad * rho_r_rad / (2.0 * a);
    const double r = rho_r_rad / a;
    const double s = std::sqrt(1.0 + r * r);
    return 0.5 * (rho_r_rad * s + a * std::log(r + s));
}

double single_scan_time(double rho_r_rad, const ScanParams& scan) {
    if (rho_r_rad < 0) throw std::domain_error("single_scan_time: rho must be non-negative");
    return kPi * rho_r_rad * rho_r_rad / (scan.speed_rad_s * scan.pitch_rad);
}

double fou_scan_time(const ScanParams& scan) {
    return kPi * scan.fou_rad * scan.fou_rad / (scan.speed_rad_s * scan.pitch_rad);
}

double single_scan_expected_time(const ScanParams& scan) {
    scan.validate();
    const double k2 = scan.kappa_rad * scan.kappa_rad;
    const double eta = scan.fou_rad * scan.fou_rad / (2.0 * k2);
    return 2.0 * kPi * k2 / (scan.speed_rad_s * scan.pitch_rad) *
           (1.0 - std::exp(-eta) * (1.0 + eta));
}

double nearest_arm_distance(double rho_r_rad, double theta_r_rad, double pitch_rad) {
    if (rho_r_rad < 0)
        throw std::domain_error("nearest_arm_distance: rho must be non-negative");
    // Arm radii along the receiver's polar angle: (theta_r/2pi + k) d, k >= 0.
    const double frac = theta_r_rad / (2.0 * kPi);
    const double k = std::max(std::floor(rho_r_rad / pitch_rad - frac), 0.0);
    const double inner = std::abs(rho_r_rad - (frac + k) * pitch_rad);
    const double outer = std::abs(rho_r_rad - (frac + k + 1.0) * pitch_rad);
    return std::min({rho_r_rad, inner, outer});
}

double spiral_curve_distance(double rho_r_rad, double theta_r_rad, double pitch_rad) {
    const double a = pitch_rad / (2.0 * kPi);
    const double px = rho_r_rad * std::cos(theta_r_rad);
    const double py = rho_r_rad * std::sin(theta_r_rad);
    auto dist2 = [&](double t) {
        const double dx = a * t * std::cos(t) - px;
        const double dy = a * t * std::sin(t) - py;
        return dx * dx + dy * dy;
    };
    double best = rho_r_rad * rho_r_rad;  // curve passes through the origin
    const double center = std::round(rho_r_rad / pitch_rad - theta_r_rad / (2.0 * kPi));
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    for (double k = center - 1.0; k <= center + 1.0; k += 1.0) {
        const double tc = theta_r_rad + 2.0 * kPi * k;
        double lo = std::max(tc - kPi, 0.0), hi = tc + kPi;
        if (hi <= 0.0) continue;
        double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
        for (int it = 0; it < 80 && hi - lo > 1e-12 * (1.0 + hi); ++it) {
            if (dist2(c) < dist2(d)) hi = d; else lo = c;
            c = hi - gr * (hi - lo);
            d = lo + gr * (hi - lo);
        }
        best = std::min(best, dist2(0.5 * (lo + hi)));
    }
    return std::sqrt(best);
}

}  // namespace leoacq
