#include "leoacq/multiscan.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace leoacq {

namespace {
constexpr double kPi = std::numbers::pi;
}

double multiscan_time(std::uint64_t n, double t_s, const ScanParams& scan) {
    const double t_u = fou_scan_time(scan);
    if (t_s < 0 || t_s > t_u)
        throw std::domain_error("multiscan_time: t_s must be in [0, T_U]");
    return static_cast<double>(n) * (t_u + scan.reset_s) + t_s;
}

double multiscan_cdf(double t, const ScanParams& scan, const ProbabilityChain& chain) {
    if (t <= 0) return 0.0;
    const double t_u = fou_scan_time(scan);
    const double block = t_u + scan.reset_s;
    const double n = std::floor(t / block);
    const double t_s = std::min(t - n * block, t_u);  // flat during the reset
    const double rate = scan.speed_rad_s * scan.pitch_rad /
                        (2.0 * kPi * scan.kappa_rad * scan.kappa_rad);
    const double within = chain.p_r * -std::expm1(-rate * t_s);
    return 1.0 - std::pow(1.0 - chain.p_s, n) * (1.0 - within);
}

MultiScanResult expected_acquisition_time(const ScanParams& scan,
                                          const ProbabilityChain& chain) {
    scan.validate();
    if (chain.p_s <= 0)
        throw std::domain_error("expected_acquisition_time: P_S = 0, expectation diverges");
    MultiScanResult out;
    out.per_scan_success = chain.p_s;
    out.fou_time_s = fou_scan_time(scan);
    const double k2 = scan.kappa_rad * scan.kappa_rad;
    out.eta = scan.fou_rad * scan.fou_rad / (2.0 * k2);
    const double mean_full = 2.0 * kPi * k2 / (scan.speed_rad_s * scan.pitch_rad);
    // Scaled by e^-eta so large FOUs do not overflow the exponentials.
    const double em = std::exp(-out.eta);
    const double one_minus_em = -std::expm1(-out.eta);
    const double p_r = chain.p_r;
    out.expected_time_s =
        mean_full * (out.eta * (1.0 - p_r) / (one_minus_em * p_r) + 1.0) +
        scan.reset_s * ((1.0 - p_r) + p_r * em) / (one_minus_em * p_r);
    return out;
}

}  // namespace leoacq
