#include "leoacq/sweep.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "leoacq/link_budget.hpp"
#include "leoacq/montecarlo.hpp"
#include "leoacq/multiscan.hpp"

namespace leoacq {

const char* sweep_var_name(SweepVar var) {
    switch (var) {
        case SweepVar::Pitch: return "pitch";
        case SweepVar::Omega: return "omega";
        case SweepVar::Fou: return "fou";
        case SweepVar::Sigma: return "sigma";
    }
    return "?";
}

std::optional<SweepVar> sweep_var_from_name(const std::string& name) {
    if (name == "pitch") return SweepVar::Pitch;
    if (name == "omega") return SweepVar::Omega;
    if (name == "fou") return SweepVar::Fou;
    if (name == "sigma") return SweepVar::Sigma;
    return std::nullopt;
}

std::vector<SweepRow> run_sweep(const Scenario& base, const SweepSpec& spec) {
    if (!(spec.from < spec.to))
        throw std::domain_error("sweep: from must be less than to");
    if (spec.steps < 2) throw std::domain_error("sweep: steps must be >= 2");

    std::vector<SweepRow> rows;
    rows.reserve(spec.steps);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int i = 0; i < spec.steps; ++i) {
        const double value =
            spec.from + (spec.to - spec.from) * i / (spec.steps - 1);
        Scenario sc = base;
        switch (spec.var) {
            case SweepVar::Pitch: sc.pitch_d_urad = value; break;
            case SweepVar::Omega: sc.omega_urad = value; break;
            case SweepVar::Fou: sc.fou_u_mrad = value; break;
            case SweepVar::Sigma: sc.sigma_urad = value; break;
        }
        SweepRow row{value, nan, nan, nan, nan, false, std::nullopt, std::nullopt};
        try {
            const ScanParams scan = sc.scan();
            const DerivedBudget budget =
                derive_budget(sc.link(), sc.turbulence(), sc.vibration(), scan.omega_rad);
            const ProbabilityChain chain =
                probability_chain(scan, budget.coverage_radius_rad);
            const MultiScanResult ms = expected_acquisition_time(scan, chain);
            row.tm_analytic = ms.expected_time_s;
            row.p_s = chain.p_s;
            row.tau = chain.tau;
            row.g_urad = budget.coverage_radius_rad * 1e6;
            row.domain_ok = true;
            if (spec.mc_trials) {
                McConfig mc;
                mc.trials = *spec.mc_trials;
                mc.seed = spec.seed + static_cast<std::uint64_t>(i);
                const McReport rep =
                    run_mc(sc.link(), sc.turbulence(), sc.vibration(), scan, mc);
                row.tm_mc = rep.mean_time_s;
                row.mc_ci95 = rep.ci95_halfwidth_s;
            }
        } catch (const std::domain_error&) {
            // row stays NaN; caller decides how loudly to complain
        }
        rows.push_back(row);
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const SweepSpec& spec,
                     const std::vector<SweepRow>& rows) {
    out << "var,value,T_M_analytic_s,P_S,tau,g_urad";
    if (spec.mc_trials) out << ",T_M_mc_s,mc_ci95_s";
    out << "\n";
    const char* name = sweep_var_name(spec.var);
    auto cell = [](double v) {
        return std::isnan(v) ? std::string("nan") : format_double(v);
    };
    for (const auto& row : rows) {
        out << name << ',' << format_double(row.value) << ',' << cell(row.tm_analytic)
            << ',' << cell(row.p_s) << ',' << cell(row.tau) << ',' << cell(row.g_urad);
        if (spec.mc_trials) {
            out << ',' << cell(row.tm_mc.value_or(std::numeric_limits<double>::quiet_NaN()))
                << ','
                << cell(row.mc_ci95.value_or(std::numeric_limits<double>::quiet_NaN()));
        }
        out << "\n";
    }
}

}  // namespace leoacq
