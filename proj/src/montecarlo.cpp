#include "leoacq/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include "leoacq/link_budget.hpp"
#include "leoacq/rng.hpp"
#include "leoacq/scan_model.hpp"

namespace leoacq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kChunk = 4096;

// Runs fn(index) for every index in [0, count) across a pool of workers.
// Work is dealt in fixed chunks and results must be written to per-chunk
// slots, so the outcome is independent of scheduling.
template <typename Fn>
void parallel_chunks(std::uint64_t count, int threads, Fn&& fn) {
    const std::uint64_t n_chunks = (count + kChunk - 1) / kChunk;
    unsigned hw = std::thread::hardware_concurrency();
    if (threads <= 0) threads = hw ? static_cast<int>(hw) : 1;
    if (static_cast<std::uint64_t>(threads) > n_chunks)
        threads = static_cast<int>(n_chunks);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&] {
        for (;;) {
            const std::uint64_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            try {
                const std::uint64_t begin = c * kChunk;
                const std::uint64_t end = std::min(begin + kChunk, count);
                fn(c, begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
}

struct TrialStats {
    double sum_t = 0.0;
    double sum_t2 = 0.0;
    std::uint64_t scans = 0;
    std::uint64_t successes = 0;
};

struct PhysicalDecision {
    const LinkParams* link;
    const TurbulenceParams* turb;
    const VibrationParams* vib;
    double q_threshold;
    std::uint32_t dwell_samples;
};

}  // namespace

McReport run_mc(const LinkParams& link, const TurbulenceParams& turb,
                const VibrationParams& vib, const ScanParams& scan,
                const McConfig& config) {
    link.validate();
    turb.validate();
    vib.validate();
    scan.validate();
    if (config.trials < 1) throw std::domain_error("run_mc: trials must be >= 1");
    if (config.max_scans < 1) throw std::domain_error("run_mc: max_scans must be >= 1");

    const DerivedBudget budget = derive_budget(link, turb, vib, scan.omega_rad);
    const double g = budget.coverage_radius_rad;
    const double d = scan.pitch_rad;
    const double t_u = fou_scan_time(scan);
    const double t_fail = t_u + scan.reset_s;
    const double vd = scan.speed_rad_s * d;

    PhysicalDecision phys{};
    if (config.mode == McMode::Physical) {
        phys = {&link, &turb, &vib, link.snr_linear(),
                static_cast<std::uint32_t>(std::max(
                    1.0, std::round(vib.vib_freq_hz * scan.omega_rad / scan.speed_rad_s)))};
    }

    const std::uint64_t n_chunks = (config.trials + kChunk - 1) / kChunk;
    std::vector<TrialStats> parts(n_chunks);
    std::vector<double> times;
    if (config.collect_times) times.resize(config.trials);

    parallel_chunks(config.trials, config.threads, [&](std::uint64_t c,
                                                       std::uint64_t begin,
                                                       std::uint64_t end) {
        TrialStats st;
        for (std::uint64_t trial = begin; trial < end; ++trial) {
            PhiloxRng rng(config.seed, trial);
            double t = 0.0;
            for (std::uint32_t s = 0;; ++s) {
                if (s >= config.max_scans)
                    throw std::runtime_error(
                        "run_mc: trial exceeded max_scans; per-scan success is ~0");
                ++st.scans;
                const double theta = 2.0 * kPi * rng.uniform();
                const double rho = rng.rayleigh(scan.kappa_rad);
                const double u_field = rng.uniform();
                bool hit = false;
                if (rho <= scan.fou_rad) {
                    const double dist =
                        config.true_curve_distance
                            ? spiral_curve_distance(rho, theta, d)
                            : nearest_arm_distance(rho, theta, d);
                    bool covered;
                    if (config.mode == McMode::Geometric) {
                        covered = dist <= g;
                    } else {
                        // Dwell-averaged instantaneous SNR at closest approach.
                        double q_sum = 0.0;
                        for (std::uint32_t i = 0; i < phys.dwell_samples; ++i) {
                            double nx, ny;
                            rng.normal_pair(nx, ny);
                            nx = nx * vib.sigma_rad + dist;
                            ny *= vib.sigma_rad;
                            const double phi = std::sqrt(nx * nx + ny * ny);
                            const double fade = turb.gamma *
                                                (rng.gamma(turb.alpha) / turb.alpha) *
                                                (rng.gamma(turb.beta) / turb.beta);
                            const double i_s = link.power_w *
                                               pointing_gain(phi, scan.omega_rad, link) *
                                               fade * link.responsivity_a_w;
                            q_sum += i_s * i_s / link.noise_power();
                        }
                        covered = q_sum / phys.dwell_samples >= phys.q_threshold;
                    }
                    hit = covered && u_field < scan.field_prob;
                }
                if (hit) {
                    t += kPi * rho * rho / vd;
                    ++st.successes;
                    break;
                }
                t += t_fail;
            }
            st.sum_t += t;
            st.sum_t2 += t * t;
            if (config.collect_times) times[trial] = t;
        }
        parts[c] = st;
    });

    TrialStats total;
    for (const auto& p : parts) {
        total.sum_t += p.sum_t;
        total.sum_t2 += p.sum_t2;
        total.scans += p.scans;
        total.successes += p.successes;
    }
    McReport report;
    report.trials = config.trials;
    report.total_scans = total.scans;
    const double n = static_cast<double>(config.trials);
    report.success_rate = static_cast<double>(total.successes) / n;
    report.mean_time_s = total.sum_t / n;
    const double var =
        std::max(0.0, total.sum_t2 / n - report.mean_time_s * report.mean_time_s);
    report.ci95_halfwidth_s = 1.959963984540054 * std::sqrt(var / n);
    report.per_scan_success_rate =
        static_cast<double>(total.successes) / static_cast<double>(total.scans);
    report.times = std::move(times);
    return report;
}

MomentReport validate_moments(const LinkParams& link, const TurbulenceParams& turb,
                              const VibrationParams& vib, double omega_rad,
                              double mean_offset_rad, std::uint64_t samples,
                              std::uint64_t seed) {
    link.validate();
    turb.validate();
    vib.validate();
    if (samples < 1) throw std::domain_error("validate_moments: samples must be >= 1");

    const std::uint64_t n_chunks = (samples + kChunk - 1) / kChunk;
    std::vector<double> ht2(n_chunks, 0.0), hc2(n_chunks, 0.0);

    parallel_chunks(samples, 0, [&](std::uint64_t c, std::uint64_t begin,
                                    std::uint64_t end) {
        double sum_ht2 = 0.0, sum_hc2 = 0.0;
        for (std::uint64_t i = begin; i < end; ++i) {
            PhiloxRng rng(seed, i);
            double nx, ny;
            rng.normal_pair(nx, ny);
            nx = nx * vib.sigma_rad + mean_offset_rad;
            ny *= vib.sigma_rad;
            const double phi = std::sqrt(nx * nx + ny * ny);
            const double ht = pointing_gain(phi, omega_rad, link);
            sum_ht2 += ht * ht;
            const double hc = turb.gamma * (rng.gamma(turb.alpha) / turb.alpha) *
                              (rng.gamma(turb.beta) / turb.beta);
            sum_hc2 += hc * hc;
        }
        ht2[c] = sum_ht2;
        hc2[c] = sum_hc2;
    });

    double sum_ht2 = 0.0, sum_hc2 = 0.0;
    for (std::uint64_t c = 0; c < n_chunks; ++c) {
        sum_ht2 += ht2[c];
        sum_hc2 += hc2[c];
    }
    MomentReport report;
    report.samples = samples;
    report.ht2_sample = sum_ht2 / static_cast<double>(samples);
    report.hc2_sample = sum_hc2 / static_cast<double>(samples);
    report.ht2_closed =
        pointing_gain_second_moment(omega_rad, mean_offset_rad, vib.sigma_rad, link);
    report.hc2_closed = turbulence_second_moment(turb);
    return report;
}

}  // namespace leoacq
