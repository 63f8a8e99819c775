"""Smoke tests for the python bindings: a few closed-form anchors, the
optimizers, and a short deterministic Monte Carlo run."""

import math
import os

import pytest

import leoacq as la

SCENARIO = os.path.join(
    os.path.dirname(__file__), "..", "..", "scenarios", "table1_turb3.cfg"
)


@pytest.fixture(scope="module")
def scenario():
    return la.load_scenario(SCENARIO)


def test_link_constant_anchor(scenario):
    b = la.link_constant(scenario.link(), scenario.turbulence())
    assert b / 16e-12 == pytest.approx(75.14, rel=1e-3)


def test_budget_and_chain(scenario):
    scan = scenario.scan()
    budget = la.derive_budget(
        scenario.link(), scenario.turbulence(), scenario.vibration(), scan.omega_rad
    )
    assert budget.coverage_radius_rad * 1e6 == pytest.approx(15.9337, rel=1e-4)
    assert budget.omega_max_rad * 1e6 == pytest.approx(33.763, rel=1e-4)
    chain = la.probability_chain(scan, budget.coverage_radius_rad)
    assert chain.p_s == pytest.approx(0.431740, rel=1e-5)
    ms = la.expected_acquisition_time(scan, chain)
    assert ms.expected_time_s == pytest.approx(592.742, rel=1e-5)


def test_optimizers(scenario):
    scan = scenario.scan()
    sigma = scenario.vibration().sigma_rad
    b = la.link_constant(scenario.link(), scenario.turbulence())
    assert la.optimal_pitch(scan.omega_rad, b, sigma) * 1e6 == pytest.approx(
        31.867, rel=1e-4
    )
    dec = la.optimal_divergence(b, sigma, scan.omega_rad)
    assert dec.branch == la.OmegaDecision.Branch.AtLimit
    budget = la.derive_budget(
        scenario.link(), scenario.turbulence(), scenario.vibration(), scan.omega_rad
    )
    chain = la.probability_chain(scan, budget.coverage_radius_rad)
    fou = la.optimal_fou(scan, chain)
    assert math.isclose(
        math.expm1(fou.eta) - fou.eta, fou.t_hat_a, rel_tol=0, abs_tol=1e-10
    )


def test_monte_carlo_determinism(scenario):
    cfg = la.McConfig()
    cfg.trials = 20000
    cfg.seed = 42
    args = (scenario.link(), scenario.turbulence(), scenario.vibration(), scenario.scan())
    rep1 = la.run_mc(*args, cfg)
    rep2 = la.run_mc(*args, cfg)
    assert rep1.mean_time_s == rep2.mean_time_s
    assert rep1.success_rate == 1.0
    assert rep1.mean_time_s == pytest.approx(592.742, rel=0.05)


def test_scenario_round_trip(scenario):
    text = la.dump_scenario(scenario)
    assert "turb = turb3" in text
    assert "pitch_d_urad = 40" in text


def test_domain_errors(scenario):
    with pytest.raises(ValueError):
        la.coverage_radius(40e-6, la.link_constant(scenario.link(), scenario.turbulence()), 4e-6)
    with pytest.raises(la.ScenarioError):
        la.load_scenario("/nonexistent.cfg")
