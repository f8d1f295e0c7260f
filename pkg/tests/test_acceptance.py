"""
Acceptance gate: one test per criterion, at the stated tolerances.

A pass/fail line per criterion is printed in the terminal summary (see
conftest.py). Run alone with ``pytest tests/test_acceptance.py``.
"""

import time

import numpy as np
import pytest

from smstab.classify import (
    SelfAdjointVerdict,
    SkewClassification,
    SpectralMonotonicityWarning,
    classify_operator_problem,
    classify_selfadjoint,
    classify_skew,
)
from smstab.grid import Grid, GridFunction
from smstab.operators import build_operator, energy
from smstab.pade import order_residual, pade_coeffs, stability_modulus
from smstab.spectral import discrete_eigenvalue, numeric_eigenvalue, spectral_convergence, spectrum_table
from smstab.stepper import InitialData, SimulationConfig, convergence_study, simulate

pytestmark = pytest.mark.filterwarnings("ignore::smstab.classify.SMStabilityWarning")

G31 = Grid(31)
CONVECTION = ["upwind1", "central", "upwind2", "third3"]
BUILTINS = CONVECTION + ["diff2", "diff4"]
Y_SAMPLES = np.linspace(-100, 100, 1000)


def test_ac1_spectrum_reproduction():
    start = time.perf_counter()
    worst = 0.0
    for name in CONVECTION:
        op = build_operator(name, G31)
        for m in G31.harmonics:
            closed = discrete_eigenvalue(name, G31, m)
            oracle = numeric_eigenvalue(op, m)
            worst = max(worst, abs(closed - oracle) / max(abs(oracle), 1.0))
    elapsed = time.perf_counter() - start
    assert worst < 1e-12, f"max relative deviation {worst:.3g}"
    assert elapsed < 1.0, f"took {elapsed:.2f} s"


def test_ac2_shared_imaginary_parts():
    a = spectrum_table("upwind1", G31).mu.imag
    b = spectrum_table("central", G31).mu.imag
    assert np.max(np.abs(a - b)) < 1e-13


def test_ac3_energy_ratio():
    rng = np.random.default_rng(2024)
    third, up2 = build_operator("third3", G31), build_operator("upwind2", G31)
    worst = 0.0
    for _ in range(100):
        y = GridFunction(rng.standard_normal(31), G31)
        e3, e2 = energy(third, y), energy(up2, y)
        worst = max(worst, abs(e3 - e2 / 3) / abs(e2 / 3))
    assert worst < 1e-12, f"max relative deviation {worst:.3g}"


def test_ac4_pade_special_cases():
    r01, r11 = pade_coeffs(0, 1), pade_coeffs(1, 1)
    assert list(r01.p_coeffs) == [1.0] and list(r01.q_coeffs) == [1.0, 1.0]
    assert list(r11.p_coeffs) == [1.0, -0.5] and list(r11.q_coeffs) == [1.0, 0.5]
    dev01 = np.max(np.abs(stability_modulus(r01, Y_SAMPLES) - 1 / np.sqrt(1 + Y_SAMPLES**2)))
    dev11 = np.max(np.abs(stability_modulus(r11, Y_SAMPLES) - 1))
    assert dev01 < 1e-13, f"|R01(iy)| off by {dev01:.3g}"
    assert dev11 < 1e-13, f"|R11(iy)| off by {dev11:.3g}"


def test_ac5_diagonal_neutrality():
    for m in range(1, 5):
        dev = np.max(np.abs(stability_modulus(pade_coeffs(m, m), Y_SAMPLES) - 1))
        assert dev < 1e-13, f"|R{m}{m}(iy)| deviates from 1 by {dev:.3g}"
    y = Y_SAMPLES[Y_SAMPLES != 0]
    offenders = []
    for m in range(1, 5):
        for l in range(m):
            peak = float(np.max(stability_modulus(pade_coeffs(l, m), y)))
            if not peak < 1:
                offenders.append(f"R{l}{m}: max|R(iy)|={peak:.4f}")
    assert not offenders, "sub-diagonal damping fails for " + ", ".join(offenders)


def test_ac6_sm_classification_grid():
    for l in range(5):
        for m in range(5):
            if l + m == 0:
                continue
            verdict = classify_skew(pade_coeffs(l, m)).verdict
            assert (verdict is SkewClassification.SM_STABLE) == (l == m), f"({l},{m}) -> {verdict.value}"
    for m in (1, 2, 3):
        verdict = classify_selfadjoint(pade_coeffs(0, m), 1e6).verdict
        assert verdict is SelfAdjointVerdict.SM_STABLE, f"(0,{m}) -> {verdict.value}"
    r = classify_selfadjoint(pade_coeffs(1, 1), 1e6)
    assert r.verdict is SelfAdjointVerdict.CONDITIONALLY_SM_STABLE
    assert abs(r.condition - 2.0) <= 1e-6, f"bound {r.condition!r}"


def test_ac7_norm_conservation_and_decay():
    cfg = SimulationConfig(G31, "central", (1, 1), 0.01, 1000, InitialData.gaussian(0.1))
    norms = simulate(cfg, keep_every=1000).norms
    drift = float(np.max(np.abs(norms - norms[0])))
    assert drift < 1e-11, f"(1,1) drift {drift:.3g}"

    tau = 0.01
    for k in range(1, 16):
        traj = simulate(SimulationConfig(G31, "central", (0, 1), tau, 20, InitialData.mode(k)), keep_every=20)
        expected = (1 + abs(tau * discrete_eigenvalue("central", G31, k)) ** 2) ** -0.5
        dev = float(np.max(np.abs(traj.norms[1:] / traj.norms[:-1] - expected)))
        assert dev < 1e-12, f"mode {k}: per-step ratio off by {dev:.3g}"


def test_ac8_path_equivalence():
    rng = np.random.default_rng(8)
    y0 = rng.standard_normal(31) + 1j * rng.standard_normal(31)
    worst = 0.0
    for name in BUILTINS:
        for lm in [(0, 1), (1, 1), (0, 2), (1, 2), (2, 2)]:
            cfg = SimulationConfig(G31, name, lm, 1e-3, 100, InitialData.explicit(y0))
            a = simulate(cfg, keep_every=100).final.values
            b = simulate(cfg, path="physical", keep_every=100).final.values
            worst = max(worst, float(np.max(np.abs(a - b))))
    assert worst < 1e-10, f"max difference {worst:.3g}"


def test_ac9_order_checks():
    start = time.perf_counter()
    z = np.geomspace(1e-3, 1e-2, 8)
    for l, m in [(0, 1), (1, 1), (0, 2), (2, 2)]:
        slope = order_residual(pade_coeffs(l, m), z)
        assert abs(slope - (l + m + 1)) < 0.3, f"local order of ({l},{m}): {slope:.3f}"

    taus = [0.1, 0.05, 0.025, 0.0125]
    for name, lm in [("diff2", (0, 1)), ("central", (1, 1)), ("central", (0, 2)), ("central", (2, 2))]:
        template = SimulationConfig(G31, name, lm, 0.1, 1, InitialData.mode(1))
        slope = convergence_study(template, taus, T=0.1).slope
        assert abs(slope - sum(lm)) < 0.3, f"global order of {lm} on {name}: {slope:.3f}"

    expected = {"upwind1": 1, "central": 2, "upwind2": 2, "third3": 3, "diff2": 2, "diff4": 4}
    for name, order in expected.items():
        part = "imag" if name == "upwind2" else "abs"
        slope, _ = spectral_convergence(name, (31, 63, 125), m=1, part=part)
        assert abs(slope - order) < 0.2, f"spatial order of {name}: {slope:.3f}"
    elapsed = time.perf_counter() - start
    assert elapsed < 60, f"took {elapsed:.1f} s"


def test_ac10_spectral_monotonicity_witness():
    cfg = SimulationConfig(G31, "diff2", (0, 1), 1e-3, 50, InitialData.harmonics({1: 1.0, 5: 1.0}))
    traj = simulate(cfg)
    ratio = traj.amplitude(5) / traj.amplitude(1)
    assert len(ratio) == 51
    assert np.all(np.diff(ratio) < 0), "amplitude ratio not strictly decreasing"

    op = build_operator("diff2", G31)
    tau = 3.0 / float(np.max(op.symbol(G31.harmonics).real))
    with pytest.warns(SpectralMonotonicityWarning):
        report = classify_operator_problem(op, pade_coeffs(1, 1), tau)
    assert report.x_max > 2
    assert any("spectral monotonicity violated" in w for w in report.warnings)
    traj = simulate(SimulationConfig(G31, "diff2", (1, 1), tau, 5, InitialData.mode(1)))
    assert any("spectral monotonicity violated" in w for w in traj.warnings)
