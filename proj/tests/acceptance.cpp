// Acceptance suite: runs every model acceptance criterion end to end and
// prints one PASS/FAIL line per criterion. Exit status is the number of
// failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "leoacq/link_budget.hpp"
#include "leoacq/montecarlo.hpp"
#include "leoacq/multiscan.hpp"
#include "leoacq/optimizer.hpp"
#include "leoacq/rng.hpp"
#include "leoacq/root_find.hpp"
#include "leoacq/scan_model.hpp"
#include "oracles.hpp"

using namespace leoacq;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::printf("criterion %2d: %s  %s\n", criterion, ok ? "PASS" : "FAIL",
                detail.c_str());
    if (!ok) ++failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

constexpr double kSigma = 4e-6;

double preset_b(int level) {
    return link_constant(oracles::table1_link(), turbulence_preset(level));
}

double tm_at(double b, double sigma, const ScanParams& scan) {
    try {
        const double g = coverage_radius(scan.omega_rad, b, sigma);
        return expected_acquisition_time(scan, probability_chain(scan, g))
            .expected_time_s;
    } catch (const std::domain_error&) {
        return std::numeric_limits<double>::infinity();
    }
}

void criterion_1_link_constants() {
    const auto link = oracles::table1_link();
    const double expected[] = {137.3, 95.5, 75.1, 58.3, 45.7};
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int level = 1; level <= 5; ++level) {
        const double ratio = link_constant(link, turbulence_preset(level)) /
                             (kSigma * kSigma);
        worst = std::max(worst,
                         std::abs(ratio - expected[level - 1]) / expected[level - 1]);
    }
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    report(1, worst <= 0.01 && ms < 1.0,
           fmt("link constants B/sigma^2, worst dev %.3e (tol 1e-2), %.3f ms", worst,
               ms));
}

void criterion_2_b_sigma_min() {
    const double ratio = b_sigma_min(kSigma) / (kSigma * kSigma);
    const double dev = std::abs(ratio - 48.5) / 48.5;
    report(2, dev <= 0.01,
           fmt("B_sigma_min = %.4f sigma^2, dev %.3e (tol 1e-2)", ratio, dev));
}

void criterion_3_plateau_boundaries() {
    const double b1 = preset_b(1);
    const double target = 20e-6;
    auto f = [&](double w) { return coverage_radius(w, b1, kSigma) - target; };
    const double w_btm = omega_btm(b1, kSigma);
    const double lo = bisect(f, std::pow(2.0, 1.25) * kSigma, w_btm);
    const double hi = bisect(f, w_btm, max_divergence(b1, kSigma) * (1.0 - 1e-12));
    const double dev_lo = std::abs(lo - 18.8e-6) / 18.8e-6;
    const double dev_hi = std::abs(hi - 32e-6) / 32e-6;
    report(3, dev_lo <= 0.02 && dev_hi <= 0.02,
           fmt("plateau edges %.2f / %.2f urad vs 18.8 / 32 (tol 2e-2)", lo * 1e6,
               hi * 1e6));
}

void criterion_4_mc_agreement() {
    const auto link = oracles::table1_link();
    const auto turb = turbulence_preset(3);
    const auto vib = oracles::table1_vibration();
    const auto t0 = std::chrono::steady_clock::now();
    double worst_mean = 0.0, worst_scan_se = 0.0;
    std::uint64_t seed = 20240901;
    for (double d : {32e-6, 40e-6, 60e-6})
        for (double u : {0.8e-3, 1.3e-3, 2.0e-3}) {
            const auto scan = oracles::table1_scan(20e-6, d, u);
            const auto budget = derive_budget(link, turb, vib, scan.omega_rad);
            const auto chain = probability_chain(scan, budget.coverage_radius_rad);
            const double tm = expected_acquisition_time(scan, chain).expected_time_s;
            McConfig config;
            config.trials = 100000;
            config.seed = seed++;
            const McReport rep = run_mc(link, turb, vib, scan, config);
            worst_mean = std::max(worst_mean, std::abs(rep.mean_time_s - tm) / tm);
            const double se =
                std::sqrt(chain.p_s * (1.0 - chain.p_s) / double(rep.total_scans));
            worst_scan_se = std::max(
                worst_scan_se, std::abs(rep.per_scan_success_rate - chain.p_s) / se);
        }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(4, worst_mean <= 0.02 && worst_scan_se <= 3.0 && secs < 30.0,
           fmt("3x3 grid: worst mean dev %.3e (tol 2e-2), worst %.2f SE (tol 3), %.1f s",
               worst_mean, worst_scan_se, secs));
}

void criterion_5_fou_fit() {
    // The fitted FOU polynomial against the exact root, swept across its whole
    // stated domain, plus the acquisition-time error the fit induces.
    auto scan = oracles::table1_scan(20e-6, 48e-6);
    const auto chain =
        probability_chain(scan, coverage_radius(scan.omega_rad, preset_b(3), kSigma));
    double worst_eta = 0.0, at_eta = 0.0, worst_tm = 0.0;
    for (int i = 0; i < 500; ++i) {
        const double t_hat = 0.01 * std::pow(1000.0, i / 499.0);
        auto s = scan;
        s.reset_s = t_hat * 2.0 * oracles::kPi * s.kappa_rad * s.kappa_rad *
                    (1.0 - chain.p_r) / (s.speed_rad_s * s.pitch_rad);
        const auto root = optimal_fou(s, chain, RootMethod::Root);
        const auto fit = optimal_fou(s, chain, RootMethod::Fit);
        const double dev = std::abs(fit.eta - root.eta) / root.eta;
        if (dev > worst_eta) {
            worst_eta = dev;
            at_eta = t_hat;
        }
        auto with = [&](double eta) {
            auto s2 = s;
            s2.fou_rad = s.kappa_rad * std::sqrt(2.0 * eta);
            return expected_acquisition_time(
                       s2, probability_chain(
                               s2, coverage_radius(s2.omega_rad, preset_b(3), kSigma)))
                .expected_time_s;
        };
        worst_tm = std::max(worst_tm,
                            std::abs(with(fit.eta) - with(root.eta)) / with(root.eta));
    }
    report(5, worst_eta <= 2e-3 && worst_tm <= 1e-6,
           fmt("FOU fit vs root: eta dev %.3e at T_hat_a=%.3f (tol 2e-3), "
               "T_M dev %.3e (tol 1e-6)",
               worst_eta, at_eta, worst_tm));
}

void criterion_6_omega_btm_approx() {
    const double bmin = b_sigma_min(kSigma);
    double worst = 0.0, at = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double x = 2.0 * std::pow(10.0, i / 199.0);  // [2, 20]
        const double root = omega_btm(x * bmin, kSigma, RootMethod::Root);
        const double approx = omega_btm(x * bmin, kSigma, RootMethod::Approx);
        const double dev = std::abs(approx - root) / root;
        if (dev > worst) {
            worst = dev;
            at = x;
        }
    }
    report(6, worst <= 1e-3,
           fmt("omega_btm approx vs root: worst dev %.4e at B=%.3f B_min (tol 1e-3)",
               worst, at));
}

void criterion_7_optimizers_vs_argmin() {
    bool ok = true;
    std::string note;
    for (int level = 1; level <= 5; ++level) {
        const double b = preset_b(level);

        // spiral pitch
        const double d_opt = optimal_pitch(20e-6, b, kSigma);
        auto tm_of_d = [&](double d) {
            return tm_at(b, kSigma, oracles::table1_scan(20e-6, d));
        };
        const double d_argmin = grid_golden_min(tm_of_d, 0.5 * d_opt, 4.0 * d_opt, 200);
        if (std::abs(d_opt - d_argmin) / d_argmin > 5e-3) {
            ok = false;
            note += fmt(" d_opt[turb%.0f]", level);
        }

        // divergence-angle branch
        for (double lim : {10e-6, 15e-6, 22.8e-6}) {
            if (lim >= max_divergence(b, kSigma)) continue;
            const auto dec = optimal_divergence(b, kSigma, lim);
            auto tm_of_w = [&](double w) {
                return tm_at(b, kSigma, oracles::table1_scan(w, 40e-6));
            };
            const double hi = max_divergence(b, kSigma) * 0.99999;
            double best = std::numeric_limits<double>::infinity(), best_w = lim;
            const double step = (hi - lim) / 199.0;
            for (int i = 0; i < 200; ++i) {
                const double w = lim + step * i;
                const double t = tm_of_w(w);
                if (t < best) {
                    best = t;
                    best_w = w;
                }
            }
            const bool agrees = tm_of_w(dec.omega_opt_rad) <= best * (1.0 + 1e-9) ||
                                std::abs(dec.omega_opt_rad - best_w) <= step;
            if (!agrees) {
                ok = false;
                note += fmt(" omega[turb%.0f,lim%.1fur]", level, lim * 1e6);
            }
        }

        // FOU
        {
            auto scan = oracles::table1_scan(20e-6, 48e-6);
            const auto chain =
                probability_chain(scan, coverage_radius(20e-6, b, kSigma));
            const auto fou = optimal_fou(scan, chain, RootMethod::Root);
            auto tm_of_u = [&](double u) {
                auto s2 = scan;
                s2.fou_rad = u;
                return tm_at(b, kSigma, s2);
            };
            const double u_argmin = grid_golden_min(tm_of_u, 0.05 * scan.kappa_rad,
                                                    5.0 * scan.kappa_rad, 400);
            if (std::abs(fou.fou_rad - u_argmin) / u_argmin > 5e-3) {
                ok = false;
                note += fmt(" U_opt[turb%.0f]", level);
            }
        }

        // vibration level at a fixed divergence angle
        {
            const auto dec = vibration_analysis(b, 20e-6, kSigma);
            if (!dec.sigma_opt_rad) {
                ok = false;
                note += fmt(" sigma_opt-missing[turb%.0f]", level);
                continue;
            }
            auto tm_of_s = [&](double s) {
                return tm_at(b, s, oracles::table1_scan(20e-6, 80e-6));
            };
            double s_hi = *dec.sigma_opt_rad;
            while (std::isfinite(tm_of_s(2.0 * s_hi)) && s_hi < 1.0) s_hi *= 2.0;
            const double s_argmin = grid_golden_min(tm_of_s, 1e-9, 1.5 * s_hi, 400);
            if (std::abs(*dec.sigma_opt_rad - s_argmin) / s_argmin > 1e-2) {
                ok = false;
                note += fmt(" sigma_opt[turb%.0f]", level);
            }
        }
    }
    report(7, ok,
           ok ? "d_opt, omega branch, U_opt, sigma_opt match the argmin oracles on "
                "all five presets (tol 0.5% / 1 step / 0.5% / 1%)"
              : "mismatches:" + note);
}

void criterion_8_distributions() {
    // coverage-factor histogram against the closed-form density
    const double d = 40e-6, kappa = 1e-3;
    constexpr int kBins = 50;
    constexpr int kSamples = 1000000;
    std::vector<double> hist(kBins, 0.0);
    PhiloxRng rng(4, 0);
    for (int i = 0; i < kSamples; ++i) {
        const double rho = rng.rayleigh(kappa);
        const double theta = 2.0 * oracles::kPi * rng.uniform();
        const double tau = nearest_arm_distance(rho, theta, d) / d;
        hist[std::min(int(tau * 2 * kBins), kBins - 1)] += 1.0;
    }
    const double width = 0.5 / kBins;
    double sup = 0.0, pdf_max = 0.0;
    for (int i = 0; i < kBins; ++i) {
        const double emp = hist[i] / kSamples / width;
        const double binned =
            (snr_exceed_prob((i + 1) * width, d, kappa, ApproxMode::Exact) -
             snr_exceed_prob(i * width, d, kappa, ApproxMode::Exact)) /
            width;
        sup = std::max(sup, std::abs(emp - binned));
        pdf_max = std::max(pdf_max, binned);
    }
    const double sup_rel = sup / pdf_max;

    // in-scan sweep time is exponential
    const auto scan = oracles::table1_scan();
    const double rate = scan.speed_rad_s * scan.pitch_rad /
                        (2.0 * oracles::kPi * scan.kappa_rad * scan.kappa_rad);
    PhiloxRng rng2(2024, 0);
    std::vector<double> samples(1000000);
    for (auto& t : samples) {
        const double rho = rng2.rayleigh(scan.kappa_rad);
        t = oracles::kPi * rho * rho / (scan.speed_rad_s * scan.pitch_rad);
    }
    const double ks = oracles::ks_distance(
        std::move(samples), [&](double t) { return -std::expm1(-rate * t); });

    // repetition guarantees eventual success
    McConfig config;
    config.trials = 10000;
    config.seed = 5;
    config.max_scans = 10000;
    const McReport rep = run_mc(oracles::table1_link(), turbulence_preset(3),
                                oracles::table1_vibration(), scan, config);

    report(8, sup_rel < 0.02 && ks < 0.002 && rep.success_rate == 1.0,
           fmt("coverage sup %.3e (tol 2e-2), KS %.3e (tol 2e-3), success rate %.0f",
               sup_rel, ks, rep.success_rate));
}

void criterion_9_moments() {
    const auto link = oracles::table1_link();
    double worst_ht = 0.0, worst_hc = 0.0;
    std::uint64_t seed = 99;
    for (int level = 1; level <= 5; ++level)
        for (double sigma : {0.0, 4e-6, 15e-6}) {
            const auto rep =
                validate_moments(link, turbulence_preset(level), {sigma, 100.0},
                                 20e-6, 16e-6, 10000000, seed++);
            worst_ht = std::max(
                worst_ht, std::abs(rep.ht2_sample - rep.ht2_closed) / rep.ht2_closed);
            worst_hc = std::max(
                worst_hc, std::abs(rep.hc2_sample - rep.hc2_closed) / rep.hc2_closed);
        }
    report(9, worst_ht <= 0.01 && worst_hc <= 0.01,
           fmt("15 x 1e7 samples: worst E[h_t^2] dev %.3e, E[h_c^2] dev %.3e (tol 1e-2)",
               worst_ht, worst_hc));
}

}  // namespace

int main() {
    criterion_1_link_constants();
    criterion_2_b_sigma_min();
    criterion_3_plateau_boundaries();
    criterion_4_mc_agreement();
    criterion_5_fou_fit();
    criterion_6_omega_btm_approx();
    criterion_7_optimizers_vs_argmin();
    criterion_8_distributions();
    criterion_9_moments();
    std::printf("criterion 10: SKIP  excluded by the specification "
                "(mutually inconsistent reference anchors; covered by criterion 7)\n");
    if (failures)
        std::printf("%d criteria failed\n", failures);
    else
        std::printf("all criteria passed\n");
    return failures;
}
