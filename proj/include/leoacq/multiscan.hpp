#pragma once

#include <cstdint>

#include "leoacq/params.hpp"
#include "leoacq/scan_model.hpp"

// Multi-scan acquisition-time distribution and expectation with an inter-scan
// reset time T_a. Scans are independent trials: the pointing error is redrawn
// each scan when the transmitter re-initializes from the ephemeris.

namespace leoacq {

struct MultiScanResult {
    double expected_time_s;   // T_M
    double per_scan_success;  // P_S
    double fou_time_s;        // T_U
    double eta;               // U^2 / (2 kappa^2)
};

// Total time when acquisition happens in scan n+1 at in-scan time t_s.
double multiscan_time(std::uint64_t n, double t_s, const ScanParams& scan);

// CDF of the total acquisition time. Flat during reset intervals: a t that
// falls inside a reset maps to t_s = T_U.
double multiscan_cdf(double t_s_total, const ScanParams& scan,
                     const ProbabilityChain& chain);

// Closed-form expectation of the multi-scan acquisition time.
// Throws std::domain_error when P_S = 0 (the expectation diverges).
MultiScanResult expected_acquisition_time(const ScanParams& scan,
                                          const ProbabilityChain& chain);

}  // namespace leoacq
