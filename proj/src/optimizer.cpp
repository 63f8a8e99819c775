#include "leoacq/optimizer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "leoacq/link_budget.hpp"
#include "leoacq/root_find.hpp"

namespace leoacq {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;
// omega at which B_sigma attains its minimum, per sigma: 2^(5/4).
constexpr double kOmegaMinFactor = 2.3784142300054421;
}  // namespace

double optimal_pitch(double omega_rad, double link_constant_b, double sigma_rad) {
    return 2.0 * coverage_radius(omega_rad, link_constant_b, sigma_rad);
}

double b_sigma(double omega_rad, double sigma_rad) {
    if (omega_rad <= 0) throw std::domain_error("b_sigma: omega must be positive");
    const double w2 = omega_rad * omega_rad;
    const double s2 = sigma_rad * sigma_rad;
    return omega_rad * std::sqrt(w2 + 8.0 * s2) * std::exp(1.0 + 4.0 * s2 / w2);
}

double b_sigma_min(double sigma_rad) {
    if (sigma_rad == 0.0) return 0.0;
    return b_sigma(kOmegaMinFactor * sigma_rad, sigma_rad);
}

double omega_btm(double link_constant_b, double sigma_rad, RootMethod method) {
    const double bmin = b_sigma_min(sigma_rad);
    if (link_constant_b <= bmin)
        throw std::domain_error("omega_btm: B must exceed the minimum of B_sigma");
    switch (method) {
        case RootMethod::Root: {
            // B_sigma is strictly increasing right of 2^(5/4) sigma, so the
            // bracket [lo, hi] with B_sigma(hi) > B pins the unique root.
            double lo = sigma_rad > 0 ? kOmegaMinFactor * sigma_rad
                                      : 0.0625 * std::sqrt(link_constant_b / kE);
            double hi = 2.0 * std::max(lo, std::sqrt(link_constant_b / kE));
            while (b_sigma(hi, sigma_rad) < link_constant_b) hi *= 2.0;
            return bisect(
                [&](double w) { return b_sigma(w, sigma_rad) - link_constant_b; }, lo, hi);
        }
        case RootMethod::Approx: {
            const double q = std::sqrt(link_constant_b / kE);
            const double disc = std::max(q * q - 16.0 * sigma_rad * sigma_rad, 0.0);
            return 0.5 * (q + std::sqrt(disc));
        }
        case RootMethod::Fit: {
            const double x = link_constant_b / bmin;  // bmin > 0 here unless sigma = 0
            if (sigma_rad > 0 && x < 2.0)
                return (((1.5087 * x - 7.9617) * x + 15.913) * x - 6.8278) * sigma_rad;
            const double disc =
                std::max(link_constant_b - 16.0 * kE * sigma_rad * sigma_rad, 0.0);
            return (std::sqrt(link_constant_b) + std::sqrt(disc)) / (2.0 * std::sqrt(kE));
        }
    }
    throw std::logic_error("omega_btm: unknown method");
}

double w_of_a(double coverage_a_rad, double sigma_rad) {
    const double bound = (2.0 + std::sqrt(2.0)) * sigma_rad;
    if (coverage_a_rad < bound * (1.0 - 1e-12))
        throw std::domain_error("w_of_a: coverage radius below (2+sqrt 2) sigma");
    const double a2 = coverage_a_rad * coverage_a_rad;
    const double s2 = sigma_rad * sigma_rad;
    const double disc = std::max(a2 * a2 - 12.0 * a2 * s2 + 4.0 * s2 * s2, 0.0);
    return std::sqrt(a2 - 6.0 * s2 + std::sqrt(disc));
}

OmegaDecision optimal_divergence(double link_constant_b, double sigma_rad,
                                 double omega_limit_rad) {
    if (omega_limit_rad <= 0 ||
        omega_limit_rad >= max_divergence(link_constant_b, sigma_rad))
        throw std::domain_error("optimal_divergence: omega_limit outside the divergence bound");
    OmegaDecision out;
    out.b_sigma_min = b_sigma_min(sigma_rad);
    if (link_constant_b <= out.b_sigma_min) {
        // Coverage shrinks with omega everywhere: the laser's floor wins.
        out.branch = OmegaDecision::Branch::AtLimit;
        out.omega_opt_rad = omega_limit_rad;
        return out;
    }
    out.omega_btm_rad = omega_btm(link_constant_b, sigma_rad, RootMethod::Root);
    bool at_limit;
    if (omega_limit_rad < kOmegaMinFactor * sigma_rad) {
        // Left of the B_sigma dip: compare against the right-branch angle
        // whose stationary coverage equals g(omega_limit).
        const double a = coverage_radius(omega_limit_rad, link_constant_b, sigma_rad);
        at_limit = link_constant_b < b_sigma(w_of_a(a, sigma_rad), sigma_rad);
    } else {
        at_limit = link_constant_b < b_sigma(omega_limit_rad, sigma_rad);
    }
    out.branch = at_limit ? OmegaDecision::Branch::AtLimit : OmegaDecision::Branch::AtBtm;
    out.omega_opt_rad = at_limit ? omega_limit_rad : *out.omega_btm_rad;
    return out;
}

FouDecision optimal_fou(const ScanParams& scan, const ProbabilityChain& chain,
                        RootMethod method) {
    if (chain.p_r <= 0 || chain.p_r >= 1)
        throw std::domain_error("optimal_fou: P_R must be in (0,1)");
    scan.validate();
    FouDecision out;
    out.method = method;
    out.t_hat_a = scan.speed_rad_s * scan.pitch_rad * scan.reset_s /
                  (2.0 * kPi * scan.kappa_rad * scan.kappa_rad * (1.0 - chain.p_r));
    if (!(out.t_hat_a > 0) || !std::isfinite(out.t_hat_a))
        throw std::domain_error("optimal_fou: normalized reset time must be positive");
    if (method == RootMethod::Fit) {
        if (out.t_hat_a < 0.01 || out.t_hat_a > 10.0)
            throw std::domain_error("optimal_fou: fit only covers T_hat_a in [0.01, 10]");
        const double x = std::log(out.t_hat_a);
        if (out.t_hat_a < 0.1)
            out.eta = (0.02824 * x + 0.3137) * x + 0.9873;
        else if (out.t_hat_a <= 1.0)
            out.eta = (0.06114 * x + 0.4549) * x + 1.1445;
        else
            out.eta = (0.07171 * x + 0.4725) * x + 1.1441;
    } else {
        // expm1(eta) - eta is increasing and spans (0, inf): bracket then
        // bisect, with Newton polish to push the residual to machine level.
        auto f = [&](double n) { return std::expm1(n) - n - out.t_hat_a; };
        double hi = 1.0;
        while (f(hi) < 0) hi *= 2.0;
        double eta = bisect(f, 0.0, hi);
        for (int i = 0; i < 3; ++i) eta -= f(eta) / std::expm1(eta);
        out.eta = eta;
    }
    out.fou_rad = scan.kappa_rad * std::sqrt(2.0 * out.eta);
    return out;
}

double min_time_at_fou(const ScanParams& scan, const ProbabilityChain& chain,
                       const FouDecision& fou) {
    const double vd = scan.speed_rad_s * scan.pitch_rad;
    const double inv_pr = 1.0 / chain.p_r;
    return inv_pr * 2.0 * kPi * scan.kappa_rad * scan.kappa_rad / vd +
           (inv_pr - 1.0) * (kPi * fou.fou_rad * fou.fou_rad / vd + scan.reset_s);
}

VibrationDecision vibration_analysis(double link_constant_b, double omega_limit_rad,
                                     double design_sigma_rad) {
    if (link_constant_b <= 0)
        throw std::domain_error("vibration_analysis: B must be positive");
    if (omega_limit_rad <= 0)
        throw std::domain_error("vibration_analysis: omega_limit must be positive");
    VibrationDecision out;
    const double w2 = omega_limit_rad * omega_limit_rad;
    if (omega_limit_rad <= std::sqrt(link_constant_b) * std::exp(-0.25)) {
        const double disc = link_constant_b * link_constant_b - kE * w2 * w2;
        if (disc < 0)
            throw std::domain_error("vibration_analysis: B^2 < e omega^4");
        out.sigma_opt_rad = std::sqrt(disc) / (2.0 * std::sqrt(2.0 * kE) * omega_limit_rad);
    }
    const double s2 = design_sigma_rad * design_sigma_rad;
    out.omega_sigma_limit_rad = std::sqrt(
        std::sqrt(link_constant_b * link_constant_b / kE + 16.0 * s2 * s2) - 4.0 * s2);
    return out;
}

}  // namespace leoacq
