#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "leoacq/link_budget.hpp"
#include "leoacq/montecarlo.hpp"
#include "leoacq/multiscan.hpp"
#include "leoacq/optimizer.hpp"
#include "leoacq/scan_model.hpp"
#include "leoacq/scenario.hpp"

namespace py = pybind11;
using namespace leoacq;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Closed-form LEO-to-ground link acquisition time model with "
              "Monte Carlo verification";

    py::class_<LinkParams>(m, "LinkParams")
        .def(py::init<>())
        .def_readwrite("distance_m", &LinkParams::distance_m)
        .def_readwrite("loss_tx", &LinkParams::loss_tx)
        .def_readwrite("loss_rx", &LinkParams::loss_rx)
        .def_readwrite("split_ratio", &LinkParams::split_ratio)
        .def_readwrite("aperture_m", &LinkParams::aperture_m)
        .def_readwrite("responsivity_a_w", &LinkParams::responsivity_a_w)
        .def_readwrite("noise_std_a", &LinkParams::noise_std_a)
        .def_readwrite("snr_threshold_db", &LinkParams::snr_threshold_db)
        .def_readwrite("power_w", &LinkParams::power_w)
        .def("noise_power", &LinkParams::noise_power)
        .def("snr_linear", &LinkParams::snr_linear);

    py::class_<TurbulenceParams>(m, "TurbulenceParams")
        .def(py::init<double, double, double>(), py::arg("gamma"), py::arg("alpha"),
             py::arg("beta"))
        .def_readwrite("gamma", &TurbulenceParams::gamma)
        .def_readwrite("alpha", &TurbulenceParams::alpha)
        .def_readwrite("beta", &TurbulenceParams::beta);

    py::class_<VibrationParams>(m, "VibrationParams")
        .def(py::init<double, double>(), py::arg("sigma_rad"), py::arg("vib_freq_hz"))
        .def_readwrite("sigma_rad", &VibrationParams::sigma_rad)
        .def_readwrite("vib_freq_hz", &VibrationParams::vib_freq_hz);

    py::class_<ScanParams>(m, "ScanParams")
        .def(py::init<>())
        .def_readwrite("omega_rad", &ScanParams::omega_rad)
        .def_readwrite("pitch_rad", &ScanParams::pitch_rad)
        .def_readwrite("fou_rad", &ScanParams::fou_rad)
        .def_readwrite("speed_rad_s", &ScanParams::speed_rad_s)
        .def_readwrite("reset_s", &ScanParams::reset_s)
        .def_readwrite("field_prob", &ScanParams::field_prob)
        .def_readwrite("kappa_rad", &ScanParams::kappa_rad);

    py::class_<DerivedBudget>(m, "DerivedBudget")
        .def_readonly("link_constant", &DerivedBudget::link_constant)
        .def_readonly("coverage_radius_rad", &DerivedBudget::coverage_radius_rad)
        .def_readonly("omega_max_rad", &DerivedBudget::omega_max_rad);

    py::class_<ProbabilityChain>(m, "ProbabilityChain")
        .def_readonly("tau", &ProbabilityChain::tau)
        .def_readonly("p_snr", &ProbabilityChain::p_snr)
        .def_readonly("p_r", &ProbabilityChain::p_r)
        .def_readonly("p_u", &ProbabilityChain::p_u)
        .def_readonly("p_s", &ProbabilityChain::p_s);

    py::class_<MultiScanResult>(m, "MultiScanResult")
        .def_readonly("expected_time_s", &MultiScanResult::expected_time_s)
        .def_readonly("per_scan_success", &MultiScanResult::per_scan_success)
        .def_readonly("fou_time_s", &MultiScanResult::fou_time_s)
        .def_readonly("eta", &MultiScanResult::eta);

    py::enum_<ApproxMode>(m, "ApproxMode")
        .value("Exact", ApproxMode::Exact)
        .value("Approx", ApproxMode::Approx);

    py::enum_<RootMethod>(m, "RootMethod")
        .value("Root", RootMethod::Root)
        .value("Approx", RootMethod::Approx)
        .value("Fit", RootMethod::Fit);

    py::class_<OmegaDecision> omega_decision(m, "OmegaDecision");
    py::enum_<OmegaDecision::Branch>(omega_decision, "Branch")
        .value("AtLimit", OmegaDecision::Branch::AtLimit)
        .value("AtBtm", OmegaDecision::Branch::AtBtm);
    omega_decision
        .def_readonly("omega_opt_rad", &OmegaDecision::omega_opt_rad)
        .def_readonly("branch", &OmegaDecision::branch)
        .def_readonly("omega_btm_rad", &OmegaDecision::omega_btm_rad)
        .def_readonly("b_sigma_min", &OmegaDecision::b_sigma_min);

    py::class_<FouDecision>(m, "FouDecision")
        .def_readonly("eta", &FouDecision::eta)
        .def_readonly("fou_rad", &FouDecision::fou_rad)
        .def_readonly("t_hat_a", &FouDecision::t_hat_a)
        .def_readonly("method", &FouDecision::method);

    py::class_<VibrationDecision>(m, "VibrationDecision")
        .def_readonly("sigma_opt_rad", &VibrationDecision::sigma_opt_rad)
        .def_readonly("omega_sigma_limit_rad", &VibrationDecision::omega_sigma_limit_rad);

    py::enum_<McMode>(m, "McMode")
        .value("Geometric", McMode::Geometric)
        .value("Physical", McMode::Physical);

    py::class_<McConfig>(m, "McConfig")
        .def(py::init<>())
        .def_readwrite("trials", &McConfig::trials)
        .def_readwrite("seed", &McConfig::seed)
        .def_readwrite("mode", &McConfig::mode)
        .def_readwrite("max_scans", &McConfig::max_scans)
        .def_readwrite("threads", &McConfig::threads)
        .def_readwrite("true_curve_distance", &McConfig::true_curve_distance);

    py::class_<McReport>(m, "McReport")
        .def_readonly("success_rate", &McReport::success_rate)
        .def_readonly("mean_time_s", &McReport::mean_time_s)
        .def_readonly("ci95_halfwidth_s", &McReport::ci95_halfwidth_s)
        .def_readonly("per_scan_success_rate", &McReport::per_scan_success_rate)
        .def_readonly("trials", &McReport::trials)
        .def_readonly("total_scans", &McReport::total_scans);

    py::class_<MomentReport>(m, "MomentReport")
        .def_readonly("ht2_sample", &MomentReport::ht2_sample)
        .def_readonly("ht2_closed", &MomentReport::ht2_closed)
        .def_readonly("hc2_sample", &MomentReport::hc2_sample)
        .def_readonly("hc2_closed", &MomentReport::hc2_closed)
        .def_readonly("samples", &MomentReport::samples);

    py::class_<Scenario>(m, "Scenario")
        .def("link", &Scenario::link)
        .def("turbulence", &Scenario::turbulence)
        .def("vibration", &Scenario::vibration)
        .def("scan", &Scenario::scan)
        .def("__eq__", [](const Scenario& a, const Scenario& b) { return a == b; });

    m.def("turbulence_preset", &turbulence_preset, py::arg("level"));
    m.def("turbulence_second_moment", &turbulence_second_moment);
    m.def("rice_pdf", &rice_pdf, py::arg("phi_rad"), py::arg("mean_offset_rad"),
          py::arg("sigma_rad"));
    m.def("pointing_gain", &pointing_gain, py::arg("phi_rad"), py::arg("omega_rad"),
          py::arg("link"));
    m.def("pointing_gain_second_moment", &pointing_gain_second_moment,
          py::arg("omega_rad"), py::arg("mean_offset_rad"), py::arg("sigma_rad"),
          py::arg("link"));
    m.def("required_power", &required_power, py::arg("omega_rad"), py::arg("pitch_rad"),
          py::arg("tau"), py::arg("link"), py::arg("turb"), py::arg("sigma_rad"));
    m.def("link_constant", &link_constant, py::arg("link"), py::arg("turb"));
    m.def("coverage_radius", &coverage_radius, py::arg("omega_rad"), py::arg("b"),
          py::arg("sigma_rad"));
    m.def("max_divergence", &max_divergence, py::arg("b"), py::arg("sigma_rad"));
    m.def("derive_budget", &derive_budget, py::arg("link"), py::arg("turb"),
          py::arg("vib"), py::arg("omega_rad"));

    m.def("spiral_radius", &spiral_radius, py::arg("theta_rad"), py::arg("pitch_rad"));
    m.def("rayleigh_within", &rayleigh_within, py::arg("radius_rad"), py::arg("kappa_rad"));
    m.def("rayleigh_quantile", &rayleigh_quantile, py::arg("prob"), py::arg("kappa_rad"));
    m.def("coverage_factor_pdf", &coverage_factor_pdf, py::arg("tau"),
          py::arg("pitch_rad"), py::arg("kappa_rad"));
    m.def("snr_exceed_prob", &snr_exceed_prob, py::arg("tau"), py::arg("pitch_rad"),
          py::arg("kappa_rad"), py::arg("mode") = ApproxMode::Approx);
    m.def("probability_chain", &probability_chain, py::arg("scan"),
          py::arg("coverage_radius_rad"), py::arg("mode") = ApproxMode::Approx);
    m.def("spiral_length", &spiral_length, py::arg("rho_r_rad"), py::arg("pitch_rad"),
          py::arg("mode") = ApproxMode::Approx);
    m.def("single_scan_time", &single_scan_time, py::arg("rho_r_rad"), py::arg("scan"));
    m.def("fou_scan_time", &fou_scan_time, py::arg("scan"));
    m.def("single_scan_expected_time", &single_scan_expected_time, py::arg("scan"));
    m.def("nearest_arm_distance", &nearest_arm_distance, py::arg("rho_r_rad"),
          py::arg("theta_r_rad"), py::arg("pitch_rad"));
    m.def("spiral_curve_distance", &spiral_curve_distance, py::arg("rho_r_rad"),
          py::arg("theta_r_rad"), py::arg("pitch_rad"));

    m.def("multiscan_time", &multiscan_time, py::arg("n"), py::arg("t_s"), py::arg("scan"));
    m.def("multiscan_cdf", &multiscan_cdf, py::arg("t"), py::arg("scan"), py::arg("chain"));
    m.def("expected_acquisition_time", &expected_acquisition_time, py::arg("scan"),
          py::arg("chain"));

    m.def("optimal_pitch", &optimal_pitch, py::arg("omega_rad"), py::arg("b"),
          py::arg("sigma_rad"));
    m.def("b_sigma", &b_sigma, py::arg("omega_rad"), py::arg("sigma_rad"));
    m.def("b_sigma_min", &b_sigma_min, py::arg("sigma_rad"));
    m.def("omega_btm", &omega_btm, py::arg("b"), py::arg("sigma_rad"),
          py::arg("method") = RootMethod::Root);
    m.def("w_of_a", &w_of_a, py::arg("coverage_a_rad"), py::arg("sigma_rad"));
    m.def("optimal_divergence", &optimal_divergence, py::arg("b"), py::arg("sigma_rad"),
          py::arg("omega_limit_rad"));
    m.def("optimal_fou", &optimal_fou, py::arg("scan"), py::arg("chain"),
          py::arg("method") = RootMethod::Root);
    m.def("min_time_at_fou", &min_time_at_fou, py::arg("scan"), py::arg("chain"),
          py::arg("fou"));
    m.def("vibration_analysis", &vibration_analysis, py::arg("b"),
          py::arg("omega_limit_rad"), py::arg("design_sigma_rad"));

    m.def("run_mc", &run_mc, py::arg("link"), py::arg("turb"), py::arg("vib"),
          py::arg("scan"), py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("validate_moments", &validate_moments, py::arg("link"), py::arg("turb"),
          py::arg("vib"), py::arg("omega_rad"), py::arg("mean_offset_rad"),
          py::arg("samples"), py::arg("seed"),
          py::call_guard<py::gil_scoped_release>());

    m.def("load_scenario", &load_scenario, py::arg("path"));
    m.def("dump_scenario", &dump_scenario, py::arg("scenario"));

    py::register_exception<ScenarioError>(m, "ScenarioError");
}
