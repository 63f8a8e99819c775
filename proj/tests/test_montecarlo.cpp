#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "leoacq/link_budget.hpp"
#include "leoacq/montecarlo.hpp"
#include "leoacq/multiscan.hpp"
#include "leoacq/rng.hpp"
#include "leoacq/scan_model.hpp"
#include "oracles.hpp"

using namespace leoacq;
using doctest::Approx;
using oracles::kPi;

namespace {

struct Fixture {
    LinkParams link = oracles::table1_link();
    TurbulenceParams turb = turbulence_preset(3);
    VibrationParams vib = oracles::table1_vibration();
    ScanParams scan = oracles::table1_scan();

    ProbabilityChain chain() const {
        const auto budget = derive_budget(link, turb, vib, scan.omega_rad);
        return probability_chain(scan, budget.coverage_radius_rad);
    }
    double tm() const { return expected_acquisition_time(scan, chain()).expected_time_s; }
};

}  // namespace

TEST_CASE("philox stream basics") {
    PhiloxRng a(1, 0), b(1, 0), c(1, 1), d(2, 0);
    CHECK(a.next_u64() == b.next_u64());
    CHECK(a.next_u64() == b.next_u64());
    CHECK(a.next_u64() != c.next_u64());
    CHECK(b.next_u64() != d.next_u64());
    PhiloxRng e(123, 45);
    for (int i = 0; i < 10000; ++i) {
        const double u = e.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    // crude uniformity of the double mapping
    PhiloxRng f(9, 9);
    double sum = 0.0;
    for (int i = 0; i < 200000; ++i) sum += f.uniform();
    CHECK(sum / 200000 == Approx(0.5).epsilon(5e-3));
}

TEST_CASE("rayleigh sampling matches the containment law") {
    PhiloxRng rng(11, 0);
    const double kappa = 1e-3, u_bound = 1.3e-3;
    const int n = 1000000;
    int within = 0;
    for (int i = 0; i < n; ++i)
        if (rng.rayleigh(kappa) <= u_bound) ++within;
    const double expected = rayleigh_within(u_bound, kappa);
    const double se = std::sqrt(expected * (1 - expected) / n);
    CHECK(std::abs(within / double(n) - expected) < 3 * se);
}

TEST_CASE("geometric mode reproduces the multi-scan law") {
    Fixture fx;
    McConfig config;
    config.trials = 100000;
    config.seed = 1;
    config.collect_times = true;
    const McReport rep = run_mc(fx.link, fx.turb, fx.vib, fx.scan, config);
    const auto chain = fx.chain();
    const double tm = fx.tm();

    CHECK(rep.success_rate == 1.0);
    CHECK(std::abs(rep.mean_time_s - tm) / tm < 0.02);
    const double se =
        std::sqrt(chain.p_s * (1 - chain.p_s) / double(rep.total_scans));
    CHECK(std::abs(rep.per_scan_success_rate - chain.p_s) < 3 * se);

    SUBCASE("empirical CDF tracks the closed form") {
        REQUIRE(rep.times.size() == config.trials);
        for (double t : {200.0, 600.0, 1200.0}) {
            const double emp =
                std::count_if(rep.times.begin(), rep.times.end(),
                              [&](double x) { return x <= t; }) /
                double(config.trials);
            CHECK(std::abs(emp - multiscan_cdf(t, fx.scan, chain)) < 0.01);
        }
    }
}

TEST_CASE("every scan succeeds when coverage, field and FOU are guaranteed") {
    Fixture fx;
    fx.scan.field_prob = 1.0;
    fx.scan.fou_rad = 100 * fx.scan.kappa_rad;
    fx.scan.pitch_rad = 25e-6;  // coverage radius spans over half the pitch
    McConfig config;
    config.trials = 20000;
    config.seed = 3;
    const McReport rep = run_mc(fx.link, fx.turb, fx.vib, fx.scan, config);
    CHECK(rep.success_rate == 1.0);
    CHECK(rep.total_scans == config.trials);
    const double mean_full = 2 * kPi * fx.scan.kappa_rad * fx.scan.kappa_rad /
                             (fx.scan.speed_rad_s * fx.scan.pitch_rad);
    CHECK(rep.mean_time_s ==
          Approx(mean_full).epsilon(4 * rep.ci95_halfwidth_s / mean_full));
}

TEST_CASE("report is bit-identical across thread counts and repeat runs") {
    Fixture fx;
    McConfig config;
    config.trials = 30000;
    config.seed = 77;
    config.threads = 1;
    const McReport serial = run_mc(fx.link, fx.turb, fx.vib, fx.scan, config);
    config.threads = 2;
    const McReport dual = run_mc(fx.link, fx.turb, fx.vib, fx.scan, config);
    config.threads = 7;
    const McReport odd = run_mc(fx.link, fx.turb, fx.vib, fx.scan, config);
    CHECK(serial.mean_time_s == dual.mean_time_s);
    CHECK(serial.mean_time_s == odd.mean_time_s);
    CHECK(serial.ci95_halfwidth_s == dual.ci95_halfwidth_s);
    CHECK(serial.total_scans == dual.total_scans);
    CHECK(serial.per_scan_success_rate == odd.per_scan_success_rate);
}

TEST_CASE("seed changes the draw, scenario stays in tolerance") {
    Fixture fx;
    McConfig config;
    config.trials = 30000;
    config.seed = 5;
    const McReport a = run_mc(fx.link, fx.turb, fx.vib, fx.scan, config);
    config.seed = 6;
    const McReport b = run_mc(fx.link, fx.turb, fx.vib, fx.scan, config);
    CHECK(a.mean_time_s != b.mean_time_s);
}

TEST_CASE("cap on scans flags a vanishing success probability") {
    Fixture fx;
    fx.scan.fou_rad = 0.01 * fx.scan.kappa_rad;  // P_U ~ 5e-5
    McConfig config;
    config.trials = 100;
    config.seed = 1;
    config.max_scans = 10;
    CHECK_THROWS_AS(run_mc(fx.link, fx.turb, fx.vib, fx.scan, config),
                    std::runtime_error);
}

TEST_CASE("in-scan success time is exponential") {
    // push Rayleigh draws through the sweep-time map and compare with the
    // closed-form exponential law
    const auto scan = oracles::table1_scan();
    const double rate = scan.speed_rad_s * scan.pitch_rad /
                        (2 * kPi * scan.kappa_rad * scan.kappa_rad);
    PhiloxRng rng(2024, 0);
    std::vector<double> samples(1000000);
    for (auto& t : samples) {
        const double rho = rng.rayleigh(scan.kappa_rad);
        t = kPi * rho * rho / (scan.speed_rad_s * scan.pitch_rad);
    }
    const double ks = oracles::ks_distance(
        std::move(samples), [&](double t) { return -std::expm1(-rate * t); });
    CHECK(ks < 0.002);
}

TEST_CASE("sampled coverage factor matches the closed-form density") {
    const double d = 40e-6, kappa = 1e-3;
    constexpr int kBins = 50;
    constexpr int kSamples = 1000000;
    std::vector<double> hist(kBins, 0.0);
    PhiloxRng rng(4, 0);
    for (int i = 0; i < kSamples; ++i) {
        const double rho = rng.rayleigh(kappa);
        const double theta = 2 * kPi * rng.uniform();
        const double tau = nearest_arm_distance(rho, theta, d) / d;
        const int bin = std::min(int(tau * 2 * kBins), kBins - 1);
        hist[bin] += 1.0;
    }
    const double width = 0.5 / kBins;
    double sup = 0.0, pdf_max = 0.0;
    for (int i = 0; i < kBins; ++i) {
        const double emp = hist[i] / kSamples / width;
        const double lo = i * width, hi = (i + 1) * width;
        const double binned = (snr_exceed_prob(hi, d, kappa, ApproxMode::Exact) -
                               snr_exceed_prob(lo, d, kappa, ApproxMode::Exact)) /
                              width;
        sup = std::max(sup, std::abs(emp - binned));
        pdf_max = std::max(pdf_max, binned);
    }
    CHECK(sup / pdf_max < 0.02);
}

TEST_CASE("moment validation against the closed forms") {
    const auto link = oracles::table1_link();
    SUBCASE("medium turbulence with jitter") {
        const auto rep = validate_moments(link, turbulence_preset(3), {4e-6, 100.0},
                                          20e-6, 16e-6, 2000000, 10);
        CHECK(std::abs(rep.ht2_sample - rep.ht2_closed) / rep.ht2_closed < 0.01);
        CHECK(std::abs(rep.hc2_sample - rep.hc2_closed) / rep.hc2_closed < 0.01);
    }
    SUBCASE("no jitter collapses the pointing moment exactly") {
        const auto rep = validate_moments(link, turbulence_preset(1), {0.0, 100.0},
                                          20e-6, 16e-6, 1000, 10);
        CHECK(rep.ht2_sample == Approx(rep.ht2_closed).epsilon(1e-12));
        const double peak = pointing_gain(16e-6, 20e-6, link);
        CHECK(rep.ht2_closed == Approx(peak * peak).epsilon(1e-12));
    }
    SUBCASE("strong turbulence endpoint") {
        const auto rep = validate_moments(link, turbulence_preset(5), {4e-6, 100.0},
                                          20e-6, 16e-6, 2000000, 11);
        CHECK(std::abs(rep.hc2_sample - rep.hc2_closed) / rep.hc2_closed < 0.01);
    }
    SUBCASE("deterministic across thread counts") {
        const auto a = validate_moments(link, turbulence_preset(3), {4e-6, 100.0},
                                        20e-6, 16e-6, 200000, 5);
        const auto b = validate_moments(link, turbulence_preset(3), {4e-6, 100.0},
                                        20e-6, 16e-6, 200000, 5);
        CHECK(a.ht2_sample == b.ht2_sample);
        CHECK(a.hc2_sample == b.hc2_sample);
    }
}

TEST_CASE("physical mode sanity") {
    Fixture fx;
    McConfig config;
    config.trials = 2000;
    config.seed = 8;
    config.mode = McMode::Physical;
    const McReport rep = run_mc(fx.link, fx.turb, fx.vib, fx.scan, config);
    CHECK(rep.success_rate == 1.0);
    CHECK(rep.per_scan_success_rate > 0.1);
    CHECK(rep.per_scan_success_rate < 0.9);
    const McReport again = run_mc(fx.link, fx.turb, fx.vib, fx.scan, config);
    CHECK(rep.mean_time_s == again.mean_time_s);
}

TEST_CASE("true-curve metric is a near-identical diagnostic") {
    Fixture fx;
    McConfig config;
    config.trials = 20000;
    config.seed = 12;
    const McReport radial = run_mc(fx.link, fx.turb, fx.vib, fx.scan, config);
    config.true_curve_distance = true;
    const McReport curve = run_mc(fx.link, fx.turb, fx.vib, fx.scan, config);
    CHECK(std::abs(radial.per_scan_success_rate - curve.per_scan_success_rate) < 0.02);
}
