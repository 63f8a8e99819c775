#pragma once

#include <optional>

#include "leoacq/multiscan.hpp"
#include "leoacq/params.hpp"
#include "leoacq/scan_model.hpp"

// Closed-form and numerical optimization of the spiral pitch, the beam
// divergence angle, the FOU, and the vibration-influence analysis. Root
// solvers are the source of truth; the fitted polynomials ship as fast
// paths/validators with fixed reference coefficients.

namespace leoacq {

enum class RootMethod { Root, Approx, Fit };

struct OmegaDecision {
    enum class Branch { AtLimit, AtBtm };
    double omega_opt_rad;
    Branch branch;
    std::optional<double> omega_btm_rad;  // present when B > B_sigma_min
    double b_sigma_min;
};

struct FouDecision {
    double eta;        // optimal U^2 / (2 kappa^2)
    double fou_rad;    // U_opt = kappa sqrt(2 eta)
    double t_hat_a;    // normalized reset time driving the optimum
    RootMethod method;
};

// Optimal spiral pitch 2 g_{B,sigma}(omega); the optimum coverage factor is 1/2.
double optimal_pitch(double omega_rad, double link_constant_b, double sigma_rad);

// Stationarity budget B_sigma(omega) = omega sqrt(omega^2+8 sigma^2) exp(1+4 sigma^2/omega^2).
double b_sigma(double omega_rad, double sigma_rad);

// Minimum of B_sigma over omega, attained at omega = 2^(5/4) sigma.
double b_sigma_min(double sigma_rad);

// The divergence angle above 2^(5/4) sigma at which B_sigma(omega) = B.
// Requires B > b_sigma_min(sigma).
double omega_btm(double link_constant_b, double sigma_rad,
                 RootMethod method = RootMethod::Root);

// Right-branch divergence angle whose stationary coverage radius equals A.
// Requires A >= (2 + sqrt 2) sigma.
double w_of_a(double coverage_a_rad, double sigma_rad);

// Branch decision for the optimal divergence angle given the laser's minimum
// modulable angle omega_limit.
OmegaDecision optimal_divergence(double link_constant_b, double sigma_rad,
                                 double omega_limit_rad);

// Optimal FOU through the normalized reset time T_hat_a. Root mode solves
// e^eta - eta - 1 = T_hat_a; Fit mode evaluates the fitted piecewise
// quadratics in ln(T_hat_a) and only covers T_hat_a in [0.01, 10].
FouDecision optimal_fou(const ScanParams& scan, const ProbabilityChain& chain,
                        RootMethod method = RootMethod::Root);

// Minimum acquisition time at the optimal FOU; algebraically equal to the
// multi-scan expectation evaluated at U_opt.
double min_time_at_fou(const ScanParams& scan, const ProbabilityChain& chain,
                       const FouDecision& fou);

struct VibrationDecision {
    std::optional<double> sigma_opt_rad;  // present when omega_limit <= B^(1/2) e^(-1/4)
    double omega_sigma_limit_rad;         // design bound from a known sigma
};

// Vibration influence at a fixed divergence angle omega_limit, plus the
// divergence-angle design bound for a given platform sigma.
VibrationDecision vibration_analysis(double link_constant_b, double omega_limit_rad,
                                     double design_sigma_rad);

}  // namespace leoacq
