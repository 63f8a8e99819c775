#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "leoacq/scenario.hpp"

// Parameter sweeps over a scenario, optionally cross-checked with Monte Carlo
// runs per grid point. Rows where the swept value violates a domain constraint
// carry NaNs and are flagged.

namespace leoacq {

enum class SweepVar { Pitch, Omega, Fou, Sigma };

struct SweepSpec {
    SweepVar var;
    double from;  // display units: urad for pitch/omega/sigma, mrad for fou
    double to;
    int steps;
    std::optional<std::uint64_t> mc_trials;
    std::uint64_t seed = 1;
};

struct SweepRow {
    double value;        // display units, matching SweepSpec
    double tm_analytic;  // NaN on domain violation
    double p_s;
    double tau;
    double g_urad;
    bool domain_ok;
    std::optional<double> tm_mc;
    std::optional<double> mc_ci95;
};

const char* sweep_var_name(SweepVar var);
std::optional<SweepVar> sweep_var_from_name(const std::string& name);

std::vector<SweepRow> run_sweep(const Scenario& base, const SweepSpec& spec);

// CSV with header var,value,T_M_analytic_s,P_S,tau,g_urad[,T_M_mc_s,mc_ci95_s];
// numbers are printed at full round-trip precision.
void write_sweep_csv(std::ostream& out, const SweepSpec& spec,
                     const std::vector<SweepRow>& rows);

}  // namespace leoacq
