"""
Two-level Pade time stepping of dy/dt + Lambda y = 0 on a periodic grid.

Two independent implementations of y_{n+1} = R_lm(tau Lambda) y_n:

* spectral: each harmonic coefficient is multiplied by R_lm(tau mu_m);
* physical: Q_lm(tau Lambda) y_{n+1} = P_lm(tau Lambda) y_n is solved with
  dense matrices built from the stencil.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
from scipy import linalg

from ._fit import loglog_slope
from .classify import classify_operator_problem
from .grid import Grid, GridFunction, fourier_mode, harmonic_coefficients, norm, synthesize
from .operators import Scheme, StencilOperator, build_operator, to_dense
from .pade import PadeScheme, eval_R, matrix_polynomial, pade_coeffs
from .spectral import Spectrum, spectrum_table

MAX_CONDITION = 1e12


class SingularSchemeError(ArithmeticError):
    """Q_lm(tau Lambda) is singular or too ill-conditioned to solve with."""


@dataclass(frozen=True)
class InitialData:
    """
    Initial profile: a sum of harmonics, a periodized Gaussian or explicit values.

    The Gaussian is sum_j exp(-((x - 0.5 + j) / sigma)^2), j = -3..3.
    """

    kind: str
    modes: Mapping[int, complex] = field(default_factory=dict)
    sigma: float = 0.1
    values: tuple = ()

    @classmethod
    def mode(cls, k: int) -> InitialData:
        return cls("modes", {int(k): 1.0})

    @classmethod
    def harmonics(cls, modes: Mapping[int, complex]) -> InitialData:
        return cls("modes", dict(modes))

    @classmethod
    def gaussian(cls, sigma: float = 0.1) -> InitialData:
        if not sigma > 0:
            raise ValueError(f"sigma must be positive, got {sigma}")
        return cls("gaussian", sigma=sigma)

    @classmethod
    def explicit(cls, values) -> InitialData:
        return cls("values", values=tuple(complex(v) for v in values))

    def on(self, grid: Grid) -> GridFunction:
        if self.kind == "modes":
            y = GridFunction.zeros(grid)
            for k, a in self.modes.items():
                y = y + a * fourier_mode(grid, k)
            return y
        if self.kind == "gaussian":
            x = grid.x
            vals = sum(np.exp(-(((x - 0.5 + j) / self.sigma) ** 2)) for j in range(-3, 4))
            return GridFunction(vals, grid)
        if self.kind == "values":
            return GridFunction(np.array(self.values), grid)
        raise ValueError(f"unknown initial data kind {self.kind!r}")

    def describe(self) -> dict:
        if self.kind == "modes":
            return {"kind": "modes", "modes": {str(k): repr(complex(a)) for k, a in sorted(self.modes.items())}}
        if self.kind == "gaussian":
            return {"kind": "gaussian", "sigma": self.sigma}
        return {"kind": "values", "values": [repr(v) for v in self.values]}


@dataclass(frozen=True)
class SimulationConfig:
    grid: Grid
    operator: Scheme | str
    pade: tuple[int, int]
    tau: float
    steps: int
    initial: InitialData
    chi: float | None = None

    def __post_init__(self):
        if not self.tau > 0:
            raise ValueError(f"tau must be positive, got {self.tau}")
        if int(self.steps) != self.steps or self.steps < 1:
            raise ValueError(f"steps must be a positive integer, got {self.steps}")

    @property
    def T(self) -> float:
        return self.tau * self.steps

    def build_operator(self) -> StencilOperator:
        return build_operator(self.operator, self.grid, self.chi)


@dataclass
class Trajectory:
    """
    Time history of a run.

    ``coefficients[n]`` holds the harmonic coefficients of y_n ordered like
    ``grid.harmonics``; ``snapshots`` maps retained step indices to y_n.
    """

    grid: Grid
    times: np.ndarray
    norms: np.ndarray
    errors: np.ndarray
    coefficients: np.ndarray
    snapshots: dict[int, GridFunction]
    warnings: list[str] = field(default_factory=list)

    @property
    def amplitudes(self) -> np.ndarray:
        return np.abs(self.coefficients)

    def amplitude(self, m: int) -> np.ndarray:
        return self.amplitudes[:, self.grid.index_of(m)]

    @property
    def final(self) -> GridFunction:
        return synthesize(self.coefficients[-1], self.grid)


def step_spectral(coeffs: np.ndarray, spectrum: Spectrum, pade: PadeScheme, tau: float) -> np.ndarray:
    """c_m <- R_lm(tau mu_m) c_m."""
    return eval_R(pade, tau * spectrum.mu) * np.asarray(coeffs)


class PhysicalStepper:
    """Dense solve of Q(tau L) y_{n+1} = P(tau L) y_n with a reused LU factorization."""

    def __init__(self, op: StencilOperator, pade: PadeScheme, tau: float, allow_unstable: bool = False):
        if pade.l > pade.m:
            msg = f"Pade ({pade.l},{pade.m}) with l > m is not A-stable"
            if not allow_unstable:
                raise ValueError(msg + "; pass allow_unstable=True to run it anyway")
            warnings.warn(msg, RuntimeWarning, stacklevel=2)
        self.grid = op.grid
        X = tau * to_dense(op)
        self.Q = matrix_polynomial(pade.q_coeffs, X)
        self.P = matrix_polynomial(pade.p_coeffs, X)
        cond = np.linalg.cond(self.Q)
        if not np.isfinite(cond) or cond > MAX_CONDITION:
            raise SingularSchemeError(f"Q_lm(tau Lambda) condition number {cond:.3g} exceeds {MAX_CONDITION:.0e}")
        self.lu = linalg.lu_factor(self.Q)

    def __call__(self, y: GridFunction) -> GridFunction:
        if y.grid != self.grid:
            raise ValueError(f"grid mismatch: stepper M={self.grid.M}, function M={y.grid.M}")
        return GridFunction(linalg.lu_solve(self.lu, self.P @ y.values), self.grid)


def step_physical(
    y: GridFunction, op: StencilOperator, pade: PadeScheme, tau: float, allow_unstable: bool = False
) -> GridFunction:
    return PhysicalStepper(op, pade, tau, allow_unstable)(y)


def simulate(config: SimulationConfig, path: str = "spectral", keep_every: int = 1) -> Trajectory:
    """
    Advance ``config.steps`` steps and compare with exp(-t Lambda) y_0.

    Snapshots are retained every ``keep_every`` steps (and at the last step).
    """
    if path not in ("spectral", "physical"):
        raise ValueError(f"path must be 'spectral' or 'physical', got {path!r}")
    grid = config.grid
    op = config.build_operator()
    pade = pade_coeffs(*config.pade)
    tau = config.tau
    N = int(config.steps)

    report = classify_operator_problem(op, pade, tau)
    y0 = config.initial.on(grid)
    c0 = harmonic_coefficients(y0)
    mu_exact = op.symbol(grid.harmonics)

    if path == "spectral":
        spectrum = spectrum_table(op)
        stepper = None
    else:
        stepper = PhysicalStepper(op, pade, tau, allow_unstable=True)

    times = tau * np.arange(N + 1)
    coeffs = np.empty((N + 1, grid.M), dtype=complex)
    norms = np.empty(N + 1)
    errors = np.empty(N + 1)
    snapshots = {}
    c, y = c0, y0
    for n in range(N + 1):
        if n > 0:
            if stepper is None:
                c = step_spectral(c, spectrum, pade, tau)
                y = synthesize(c, grid)
            else:
                y = stepper(y)
                c = harmonic_coefficients(y)
        coeffs[n] = c
        norms[n] = norm(y)
        errors[n] = norm(y - synthesize(c0 * np.exp(-mu_exact * times[n]), grid))
        if n % keep_every == 0 or n == N:
            snapshots[n] = y
    return Trajectory(grid, times, norms, errors, coeffs, snapshots, list(report.warnings))


@dataclass(frozen=True)
class ConvergenceResult:
    slope: float
    taus: np.ndarray
    errors: np.ndarray


def convergence_study(template: SimulationConfig, tau_list, T: float | None = None) -> ConvergenceResult:
    """
    Observed global order in time from final-time errors at fixed T.

    ``T`` defaults to ``template.T``; every tau must divide T.
    """
    taus = np.asarray(tau_list, dtype=float)
    if taus.ndim != 1 or taus.size < 4:
        raise ValueError("need at least 4 tau values")
    if np.unique(taus).size != taus.size or np.any(taus <= 0):
        raise ValueError("tau values must be positive and distinct")
    T = template.T if T is None else T
    errors = []
    for tau in taus:
        steps = int(round(T / tau))
        if steps < 1 or abs(steps * tau - T) > 1e-9 * T:
            raise ValueError(f"tau={tau} does not divide T={T}")
        cfg = SimulationConfig(template.grid, template.operator, template.pade, tau, steps, template.initial, template.chi)
        errors.append(simulate(cfg, keep_every=steps).errors[-1])
    errors = np.array(errors)
    return ConvergenceResult(loglog_slope(taus, errors), taus, errors)


@dataclass(frozen=True)
class NormCheck:
    ok: bool
    witness: int | None = None

    def __bool__(self):
        return self.ok


def stability_estimate_check(trajectory: Trajectory, rtol: float = 1e-12) -> NormCheck:
    """Whether ||y_{n+1}|| <= ||y_n|| for every step; the first violating step otherwise."""
    norms = trajectory.norms
    bad = np.nonzero(norms[1:] > norms[:-1] * (1 + rtol))[0]
    if bad.size:
        return NormCheck(False, int(bad[0]) + 1)
    return NormCheck(True)

