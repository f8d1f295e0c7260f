"""
Spectral-mimetic (SM) stability of Pade two-level schemes.

Skew-symmetric problems (purely imaginary spectrum) call for neutral
stability, |R(iy)| = 1 for all real y. Self-adjoint problems (real
nonnegative spectrum) call for a stability function s(x) = R(x) that is
nonnegative and nonincreasing on the spectral interval, so that higher
harmonics damp at least as fast as lower ones, and tends to 0 as x grows.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as P

from .operators import StencilOperator, split_symmetric_skew
from .pade import PadeScheme, eval_R

SAMPLES_PER_DECADE = 10_000
X_FAR = 1e6
NEUTRAL_TOL = 1e-10
GROWTH_TOL = 1e-13
BISECT_TOL = 1e-9
DEFAULT_SKEW_THRESHOLD = 10.0


class SMStabilityWarning(UserWarning):
    """The scheme does not behave SM-stably for the given operator and step."""


class SpectralMonotonicityWarning(SMStabilityWarning):
    """tau * mu_max exceeds the range where the scheme is spectrally monotone."""


class SkewClassification(enum.Enum):
    SM_STABLE = "SMStable"
    DISSIPATIVE_STABLE = "DissipativeStable"
    UNSTABLE = "Unstable"


class SelfAdjointVerdict(enum.Enum):
    SM_STABLE = "SMStable"
    CONDITIONALLY_SM_STABLE = "ConditionallySMStable"
    NOT_SM_STABLE = "NotSMStable"
    UNSTABLE = "Unstable"


@dataclass(frozen=True)
class SkewResult:
    verdict: SkewClassification
    max_modulus: float
    max_deviation: float
    witness: float | None = None

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "max_modulus": self.max_modulus,
            "max_deviation": self.max_deviation,
            "witness": self.witness,
        }


@dataclass(frozen=True)
class SelfAdjointClassification:
    verdict: SelfAdjointVerdict
    condition: float | None = None
    witness: float | None = None

    def __post_init__(self):
        conditional = self.verdict is SelfAdjointVerdict.CONDITIONALLY_SM_STABLE
        if conditional != (self.condition is not None):
            raise ValueError("condition must be given iff the verdict is conditional")

    def to_dict(self) -> dict:
        return {"verdict": self.verdict.value, "condition": self.condition, "witness": self.witness}


def _log_samples(lo: float, hi: float) -> np.ndarray:
    decades = max(np.log10(hi) - np.log10(lo), 1.0)
    return np.logspace(np.log10(lo), np.log10(hi), int(np.ceil(decades * SAMPLES_PER_DECADE)) + 1)


def symbolic_skew_verdict(l: int, m: int) -> SkewClassification:
    """Closed-form verdict: diagonal is neutral, the two subdiagonals below it damp."""
    if l == m:
        return SkewClassification.SM_STABLE
    if m - 2 <= l < m:
        return SkewClassification.DISSIPATIVE_STABLE
    return SkewClassification.UNSTABLE


def classify_skew(scheme: PadeScheme) -> SkewResult:
    """
    Classify by sampling |R(iy)| over y in [1e-6, 1e6].

    R has real coefficients, so |R(-iy)| = |R(iy)| and y >= 0 suffices.
    """
    y = np.concatenate(([0.0], _log_samples(1e-6, X_FAR)))
    mod = np.abs(eval_R(scheme, 1j * y))
    dev = float(np.max(np.abs(mod - 1.0)))
    peak = int(np.argmax(mod))
    if dev < NEUTRAL_TOL:
        return SkewResult(SkewClassification.SM_STABLE, float(mod[peak]), dev)
    if mod[peak] <= 1.0 + GROWTH_TOL:
        return SkewResult(SkewClassification.DISSIPATIVE_STABLE, float(mod[peak]), dev)
    return SkewResult(SkewClassification.UNSTABLE, float(mod[peak]), dev, float(y[peak]))


def _bisect(f, lo: float, hi: float) -> float:
    """Boundary of ``f(x) > 0`` assuming f(lo) <= 0 < f(hi)."""
    # run past BISECT_TOL down to float resolution; it costs about 60 evaluations
    while hi - lo > BISECT_TOL * 1e-6 * max(1.0, lo):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if f(mid) > 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def classify_selfadjoint(scheme: PadeScheme, x_max: float) -> SelfAdjointClassification:
    """
    Classify s(x) = R_lm(x) on x >= 0.

    ``x_max`` is the largest tau*mu the scheme must handle; growth
    |s| > 1 on [0, x_max] makes it ``Unstable``. Sign and monotonicity are
    scanned up to max(x_max, 1e6) and the first failure is refined by
    bisection into the conditional bound tau*mu_max <= x*.
    """
    if not x_max > 0:
        raise ValueError(f"x_max must be positive, got {x_max}")
    p = np.asarray(scheme.p_coeffs, dtype=float)
    q = np.asarray(scheme.q_coeffs, dtype=float)
    # s' = (P'Q - PQ') / Q^2, so the sign of s' is the sign of this polynomial
    slope_num = P.polysub(P.polymul(P.polyder(p), q), P.polymul(p, P.polyder(q)))

    x = np.concatenate(([0.0], _log_samples(1e-6, max(x_max, X_FAR))))
    s = np.real(eval_R(scheme, x))

    grows = (np.abs(s) > 1.0 + GROWTH_TOL) & (x <= x_max)
    if np.any(grows):
        return SelfAdjointClassification(SelfAdjointVerdict.UNSTABLE, witness=float(x[np.argmax(grows)]))

    negative = s < 0
    increasing = P.polyval(x, slope_num) > 0
    failed = negative | increasing
    if not np.any(failed):
        if abs(s[-1]) <= 1e-3 and abs(float(np.real(eval_R(scheme, X_FAR)))) <= 1e-3:
            return SelfAdjointClassification(SelfAdjointVerdict.SM_STABLE)
        return SelfAdjointClassification(SelfAdjointVerdict.NOT_SM_STABLE, witness=X_FAR)

    i = int(np.argmax(failed))
    if i == 0 or x[i - 1] == 0.0:
        return SelfAdjointClassification(SelfAdjointVerdict.NOT_SM_STABLE, witness=float(x[i]))
    lo, hi = float(x[i - 1]), float(x[i])
    bounds = []
    if negative[i]:
        bounds.append(_bisect(lambda t: -P.polyval(t, p), lo, hi))
    if increasing[i]:
        bounds.append(_bisect(lambda t: P.polyval(t, slope_num), lo, hi))
    x_star = min(bounds)
    return SelfAdjointClassification(SelfAdjointVerdict.CONDITIONALLY_SM_STABLE, condition=x_star)


@dataclass
class OperatorReport:
    """Outcome of :func:`classify_operator_problem`."""

    route: str
    skew_ratio: float
    x_max: float
    skew: SkewResult | None = None
    selfadjoint: SelfAdjointClassification | None = None
    notes: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "route": self.route,
            "skew_ratio": self.skew_ratio,
            "x_max": self.x_max,
            "skew": None if self.skew is None else self.skew.to_dict(),
            "selfadjoint": None if self.selfadjoint is None else self.selfadjoint.to_dict(),
            "notes": list(self.notes),
            "warnings": list(self.warnings),
        }


def classify_operator_problem(
    op: StencilOperator,
    scheme: PadeScheme,
    tau: float,
    skew_threshold: float = DEFAULT_SKEW_THRESHOLD,
) -> OperatorReport:
    """
    Route the operator to the skew or self-adjoint criterion.

    The skew route is taken when max|Im mu| / max Re mu >= ``skew_threshold``,
    the self-adjoint route when the operator has no skew part; otherwise both
    are reported. A conditional self-adjoint verdict whose bound is exceeded
    by tau * mu_max is recorded in ``warnings`` and issued as a
    :class:`SpectralMonotonicityWarning`.
    """
    if not tau > 0:
        raise ValueError(f"tau must be positive, got {tau}")
    sym, skew = split_symmetric_skew(op)
    m = op.grid.harmonics
    mu = op.symbol(m)
    re_max = float(np.max(mu.real))
    im_max = float(np.max(np.abs(mu.imag)))
    ratio = im_max / max(re_max, 1e-300)
    x_max = tau * float(np.max(np.real(sym.symbol(m))))

    if not skew.taps:
        report = OperatorReport("selfadjoint", ratio, x_max)
    elif ratio >= skew_threshold:
        report = OperatorReport("skew", ratio, x_max)
    else:
        report = OperatorReport("mixed", ratio, x_max)

    if report.route in ("skew", "mixed"):
        report.skew = classify_skew(scheme)
        if re_max > 0:
            report.notes.append(
                f"dissipative real part present: max Re mu = {re_max!r}, tau * max Re mu = {tau * re_max!r}"
            )
        if report.skew.verdict is SkewClassification.UNSTABLE:
            report.warnings.append(
                f"scheme ({scheme.l},{scheme.m}) amplifies imaginary-axis harmonics: "
                f"|R(iy)| = {report.skew.max_modulus!r} at y = {report.skew.witness!r}"
            )
    if report.route in ("selfadjoint", "mixed") and x_max > 0:
        sa = classify_selfadjoint(scheme, x_max)
        report.selfadjoint = sa
        if sa.verdict is SelfAdjointVerdict.CONDITIONALLY_SM_STABLE and x_max > sa.condition:
            report.warnings.append(
                f"spectral monotonicity violated: tau * mu_max = {x_max!r} exceeds bound {sa.condition!r} "
                f"for scheme ({scheme.l},{scheme.m})"
            )
        elif sa.verdict in (SelfAdjointVerdict.NOT_SM_STABLE, SelfAdjointVerdict.UNSTABLE):
            report.warnings.append(f"scheme ({scheme.l},{scheme.m}) is {sa.verdict.value} for this operator")
    for msg in report.warnings:
        category = SpectralMonotonicityWarning if "monotonicity" in msg else SMStabilityWarning
        warnings.warn(msg, category, stacklevel=2)
    return report
