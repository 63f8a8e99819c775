#pragma once

#include <cstdint>
#include <vector>

#include "leoacq/params.hpp"

// Stochastic oracle for the analytical model. Geometric mode reproduces the
// acquisition process (pointing redraw, spiral sweep, FOU and field checks)
// and is the reference for time statistics. Physical mode swaps the coverage
// test for dwell-averaged instantaneous SNR with sampled vibration offsets
// and Gamma-Gamma fades; it exists to validate the moment formulas, not to
// time acquisitions.

namespace leoacq {

enum class McMode { Geometric, Physical };

struct McConfig {
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    McMode mode = McMode::Geometric;
    std::uint32_t max_scans = 100000;  // a trial hitting the cap throws (P_S ~ 0)
    int threads = 0;                   // 0 = hardware concurrency
    bool true_curve_distance = false;  // diagnostic metric instead of radial
    bool collect_times = false;        // keep per-trial acquisition times
};

struct McReport {
    double success_rate;
    double mean_time_s;
    double ci95_halfwidth_s;
    double per_scan_success_rate;
    std::uint64_t trials;
    std::uint64_t total_scans;
    std::vector<double> times;  // indexed by trial when collect_times is set
};

struct MomentReport {
    double ht2_sample;
    double ht2_closed;
    double hc2_sample;
    double hc2_closed;
    std::uint64_t samples;
};

McReport run_mc(const LinkParams& link, const TurbulenceParams& turb,
                const VibrationParams& vib, const ScanParams& scan,
                const McConfig& config);

// Sample means of h_t^2 (Rice-jittered pointing) and h_c^2 (Gamma-Gamma fade)
// against their closed forms.
MomentReport validate_moments(const LinkParams& link, const TurbulenceParams& turb,
                              const VibrationParams& vib, double omega_rad,
                              double mean_offset_rad, std::uint64_t samples,
                              std::uint64_t seed);

}  // namespace leoacq
