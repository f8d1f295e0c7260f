import math
import warnings

import numpy as np
import pytest

from smstab.classify import (
    SelfAdjointClassification,
    SelfAdjointVerdict as SA,
    SkewClassification as SK,
    SMStabilityWarning,
    SpectralMonotonicityWarning,
    classify_operator_problem,
    classify_selfadjoint,
    classify_skew,
    symbolic_skew_verdict,
)
from smstab.grid import Grid
from smstab.operators import StencilOperator, build_operator
from smstab.pade import eval_R, pade_coeffs

GRID_LM = [(l, m) for l in range(5) for m in range(5) if l + m >= 1]


def sampled_max_modulus(l, m):
    """Dense independent sampling of |R(iy)| on y in [0, 1e4]."""
    s = pade_coeffs(l, m)
    y = np.concatenate((np.linspace(0, 50, 200_001), np.geomspace(50, 1e4, 20_000)))
    return float(np.max(np.abs(eval_R(s, 1j * y))))


class TestSkew:
    def test_r11(self):
        assert classify_skew(pade_coeffs(1, 1)).verdict is SK.SM_STABLE

    def test_r01(self):
        r = classify_skew(pade_coeffs(0, 1))
        assert r.verdict is SK.DISSIPATIVE_STABLE
        assert r.witness is None

    def test_r21_witness(self):
        r = classify_skew(pade_coeffs(2, 1))
        assert r.verdict is SK.UNSTABLE
        assert r.witness is not None and r.witness > 0
        assert abs(eval_R(pade_coeffs(2, 1), 1j * r.witness)) > 1
        assert r.max_modulus > 1

    @pytest.mark.parametrize("l, m", GRID_LM)
    def test_sm_stable_exactly_on_diagonal(self, l, m):
        assert (classify_skew(pade_coeffs(l, m)).verdict is SK.SM_STABLE) == (l == m)

    @pytest.mark.parametrize("l, m", GRID_LM)
    def test_symbolic_rule_agrees(self, l, m):
        assert classify_skew(pade_coeffs(l, m)).verdict is symbolic_skew_verdict(l, m)

    @pytest.mark.parametrize("l, m", GRID_LM)
    def test_agrees_with_dense_sampling(self, l, m):
        r = classify_skew(pade_coeffs(l, m))
        grows = sampled_max_modulus(l, m) > 1 + 1e-13
        assert (r.verdict is SK.UNSTABLE) == grows

    @pytest.mark.parametrize("l, m", [(0, 3), (0, 4), (1, 4)])
    def test_far_subdiagonal_unstable(self, l, m):
        assert classify_skew(pade_coeffs(l, m)).verdict is SK.UNSTABLE

    def test_to_dict(self):
        d = classify_skew(pade_coeffs(1, 1)).to_dict()
        assert d["verdict"] == "SMStable"
        assert d["witness"] is None


class TestSelfAdjoint:
    @pytest.mark.parametrize("m", [1, 2, 3])
    @pytest.mark.parametrize("x_max", [0.5, 10.0, 1e6])
    def test_implicit_family(self, m, x_max):
        assert classify_selfadjoint(pade_coeffs(0, m), x_max).verdict is SA.SM_STABLE

    def test_r11_bound(self):
        r = classify_selfadjoint(pade_coeffs(1, 1), 1.0)
        assert r.verdict is SA.CONDITIONALLY_SM_STABLE
        assert abs(r.condition - 2.0) < 1e-9

    def test_r22_bound(self):
        # numerator 1 - x/2 + x^2/12 has no real root; s' changes sign at x = sqrt(12)
        r = classify_selfadjoint(pade_coeffs(2, 2), 1.0)
        assert r.verdict is SA.CONDITIONALLY_SM_STABLE
        assert abs(r.condition - math.sqrt(12)) < 1e-8

    def test_r12_bound(self):
        # numerator 1 - x/3 vanishes at 3
        r = classify_selfadjoint(pade_coeffs(1, 2), 1.0)
        assert r.verdict is SA.CONDITIONALLY_SM_STABLE
        assert abs(r.condition - 3.0) < 1e-9

    def test_r21_unstable(self):
        r = classify_selfadjoint(pade_coeffs(2, 1), 100.0)
        assert r.verdict is SA.UNSTABLE
        s = eval_R(pade_coeffs(2, 1), r.witness)
        assert abs(s) > 1

    def test_explicit_not_sm(self):
        # 1 - x goes negative at 1 and is unbounded in magnitude beyond 2
        r = classify_selfadjoint(pade_coeffs(1, 0), 1.5)
        assert r.verdict in (SA.CONDITIONALLY_SM_STABLE, SA.NOT_SM_STABLE)

    def test_condition_invariant(self):
        with pytest.raises(ValueError):
            SelfAdjointClassification(SA.CONDITIONALLY_SM_STABLE)
        with pytest.raises(ValueError):
            SelfAdjointClassification(SA.SM_STABLE, condition=2.0)

    @pytest.mark.parametrize("x_max", [0.0, -1.0])
    def test_x_max_positive(self, x_max):
        with pytest.raises(ValueError):
            classify_selfadjoint(pade_coeffs(0, 1), x_max)

    def test_monotone_oracle_r02(self):
        x = np.linspace(0, 1000, 100_001)
        s = np.real(eval_R(pade_coeffs(0, 2), x))
        assert np.all(s > 0) and np.all(np.diff(s) < 0)
        assert classify_selfadjoint(pade_coeffs(0, 2), 1000.0).verdict is SA.SM_STABLE


class TestOperatorProblem:
    def test_central_r11(self):
        g = Grid(31)
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            rep = classify_operator_problem(build_operator("central", g), pade_coeffs(1, 1), 0.01)
        assert rep.route == "skew"
        assert rep.skew.verdict is SK.SM_STABLE
        assert rep.selfadjoint is None
        assert rep.warnings == []

    @pytest.mark.parametrize("tau", [1e-4, 0.1, 10.0])
    def test_diffusion_implicit(self, tau):
        g = Grid(31)
        rep = classify_operator_problem(build_operator("diff2", g), pade_coeffs(0, 1), tau)
        assert rep.route == "selfadjoint"
        assert rep.selfadjoint.verdict is SA.SM_STABLE
        assert rep.warnings == []

    def test_diffusion_r11_violated(self):
        g = Grid(31)
        op = build_operator("diff2", g)
        mu_max = float(np.max(op.symbol(g.harmonics).real))
        tau = 4.0 / mu_max
        with pytest.warns(SpectralMonotonicityWarning):
            rep = classify_operator_problem(op, pade_coeffs(1, 1), tau)
        assert rep.x_max == pytest.approx(4.0, rel=1e-12)
        assert rep.selfadjoint.verdict is SA.CONDITIONALLY_SM_STABLE
        assert abs(rep.selfadjoint.condition - 2.0) < 1e-9
        assert any("spectral monotonicity violated" in w for w in rep.warnings)

    def test_diffusion_r11_within_bound(self):
        g = Grid(31)
        op = build_operator("diff2", g)
        mu_max = float(np.max(op.symbol(g.harmonics).real))
        rep = classify_operator_problem(op, pade_coeffs(1, 1), 1.0 / mu_max)
        assert rep.warnings == []

    def test_mixed_route(self):
        g = Grid(31)
        with pytest.warns(SpectralMonotonicityWarning):
            rep = classify_operator_problem(build_operator("upwind1", g), pade_coeffs(1, 1), 0.1)
        assert rep.route == "mixed"
        assert rep.skew is not None and rep.selfadjoint is not None
        assert rep.notes

    def test_threshold_configurable(self):
        g = Grid(31)
        op = build_operator("third3", g)
        rep = classify_operator_problem(op, pade_coeffs(0, 1), 0.001, skew_threshold=1e-3)
        assert rep.route == "skew"
        assert rep.notes and "dissipative" in rep.notes[0]

    def test_unstable_warns(self):
        g = Grid(31)
        with pytest.warns(SMStabilityWarning):
            rep = classify_operator_problem(build_operator("central", g), pade_coeffs(2, 1), 0.01)
        assert rep.skew.verdict is SK.UNSTABLE

    def test_tau_positive(self):
        with pytest.raises(ValueError):
            classify_operator_problem(build_operator("central", Grid(5)), pade_coeffs(1, 1), 0.0)

    def test_zero_operator(self):
        rep = classify_operator_problem(StencilOperator({}, Grid(5)), pade_coeffs(1, 1), 0.1)
        assert rep.route == "selfadjoint"
        assert rep.x_max == 0.0

    def test_to_dict(self):
        rep = classify_operator_problem(build_operator("diff2", Grid(5)), pade_coeffs(0, 1), 0.1)
        d = rep.to_dict()
        assert d["route"] == "selfadjoint"
        assert d["selfadjoint"]["verdict"] == "SMStable"
