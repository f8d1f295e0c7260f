"""
Closed-form spectra of the built-in operators and exact semigroup evolution.

Every built-in operator is circulant, so the harmonics w_m are exact
eigenfunctions and the discrete eigenvalues mu_m have closed forms in
theta = 2 pi m h. The continuous eigenvalues of d/dx and -d2/dx2 on the
periodic unit interval are i 2 pi m and 4 pi^2 m^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._fit import loglog_slope
from .grid import (
    Grid,
    GridFunction,
    check_harmonic,
    fourier_mode,
    harmonic_coefficients,
    inner_product,
    synthesize,
)
from .operators import (
    ConvectionScheme,
    DiffusionScheme,
    MixedScheme,
    Scheme,
    StencilOperator,
    apply,
    parse_scheme,
)


def continuous_eigenvalue(kind, m, chi: float | None = None):
    """
    Eigenvalue of the differential operator on exp(i 2 pi m x).

    ``kind`` is ``"convection"``, ``"diffusion"``, ``"mixed"`` (with ``chi``),
    or a scheme object whose continuous counterpart is used. Accepts arrays.
    """
    if isinstance(kind, ConvectionScheme):
        kind = "convection"
    elif isinstance(kind, DiffusionScheme):
        kind = "diffusion"
    elif isinstance(kind, MixedScheme):
        kind, chi = "mixed", kind.chi
    m = np.asarray(m, dtype=float)
    conv = np.zeros(m.shape, dtype=complex)
    conv.imag = 2 * np.pi * m
    diff = (4 * np.pi**2 * m**2).astype(complex)
    if kind == "convection":
        out = conv
    elif kind == "diffusion":
        out = diff
    elif kind == "mixed":
        if chi is None or not 0.0 <= chi <= 1.0:
            raise ValueError(f"mixed kind needs chi in [0, 1], got {chi}")
        out = chi * conv + (1.0 - chi) * diff
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return out[()] if out.ndim == 0 else out


def _closed_form(scheme: Scheme, grid: Grid, m: np.ndarray) -> np.ndarray:
    h = grid.h
    theta = 2 * np.pi * (m % grid.M) / grid.M
    c, s = np.cos(theta), np.sin(theta)
    if scheme is ConvectionScheme.UPWIND1:
        return 2 / h * np.sin(theta / 2) ** 2 + 1j / h * s
    if scheme is ConvectionScheme.CENTRAL:
        return 0.0 + 1j / h * s
    if scheme is ConvectionScheme.UPWIND2:
        return (c - 1) ** 2 / h + 1j / h * s * (2 - c)
    if scheme is ConvectionScheme.THIRD_ORDER:
        return (c - 1) ** 2 / (3 * h) + 1j / (3 * h) * s * (4 - c)
    sin2 = np.sin(np.pi * m / grid.M) ** 2
    if scheme is DiffusionScheme.SECOND:
        return (4 / h**2 * sin2).astype(complex)
    if scheme is DiffusionScheme.FOURTH:
        return (4 / h**2 * sin2 * (1 + sin2 / 3)).astype(complex)
    if isinstance(scheme, MixedScheme):
        return scheme.chi * _closed_form(scheme.convection, grid, m) + (1.0 - scheme.chi) * _closed_form(
            scheme.diffusion, grid, m
        )
    raise TypeError(f"no closed form for {scheme!r}")


def discrete_eigenvalue(scheme: Scheme | str, grid: Grid, m: int, chi: float | None = None) -> complex:
    """Closed-form eigenvalue mu_m of the built-in operator ``scheme``."""
    check_harmonic(grid, m)
    return complex(_closed_form(parse_scheme(scheme, chi), grid, np.asarray(int(m))))


def numeric_eigenvalue(op: StencilOperator, m: int) -> complex:
    """Rayleigh quotient (op w_m, w_m); exact for circulant operators."""
    w = fourier_mode(op.grid, m)
    return inner_product(apply(op, w), w)


class EigenvaluePair(NamedTuple):
    m: int
    mu: complex
    lam: complex


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Discrete (``mu``) and continuous (``lam``) eigenvalues per harmonic ``m``."""

    m: np.ndarray
    mu: np.ndarray
    lam: np.ndarray
    label: str
    grid: Grid

    def __len__(self):
        return len(self.m)

    @property
    def entries(self) -> list[EigenvaluePair]:
        return [EigenvaluePair(int(k), complex(a), complex(b)) for k, a, b in zip(self.m, self.mu, self.lam)]

    def __getitem__(self, m: int) -> EigenvaluePair:
        i = self.grid.index_of(m)
        return EigenvaluePair(int(self.m[i]), complex(self.mu[i]), complex(self.lam[i]))


def spectrum_table(scheme: Scheme | StencilOperator, grid: Grid | None = None) -> Spectrum:
    """
    Full table over m = -(M-1)/2..(M-1)/2.

    ``scheme`` may be a scheme (closed forms) or a :class:`StencilOperator`.
    Operators built from a scheme use its closed form; other operators use the
    stencil symbol and have ``lam`` set to NaN.
    """
    if isinstance(scheme, StencilOperator):
        op = scheme
        grid = op.grid
        m = grid.harmonics
        if op.scheme is None:
            lam = np.full(grid.M, np.nan + 0j)
            return Spectrum(m, op.symbol(m), lam, op.label, grid)
        scheme = op.scheme
    if grid is None:
        raise ValueError("grid is required when passing a scheme")
    scheme = parse_scheme(scheme)
    m = grid.harmonics
    mu = _closed_form(scheme, grid, m)
    lam = np.asarray(continuous_eigenvalue(scheme, m), dtype=complex)
    label = scheme.name if isinstance(scheme, MixedScheme) else scheme.value
    return Spectrum(m, mu, lam, label, grid)


def exact_evolution(y0: GridFunction, kind, t: float) -> GridFunction:
    """
    Exact solution of dy/dt + L y = 0 at time ``t``.

    ``kind`` is a :class:`StencilOperator` (discrete semigroup exp(-t Lambda)),
    a :class:`Spectrum`, or a continuous kind accepted by
    :func:`continuous_eigenvalue` (grid-sampled continuous solution for
    data resolved on the grid).
    """
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    grid = y0.grid
    if isinstance(kind, StencilOperator):
        if kind.grid != grid:
            raise ValueError(f"grid mismatch: operator M={kind.grid.M}, function M={grid.M}")
        mu = kind.symbol(grid.harmonics)
    elif isinstance(kind, Spectrum):
        mu = kind.mu
    else:
        mu = np.asarray(continuous_eigenvalue(kind, grid.harmonics), dtype=complex)
    c = harmonic_coefficients(y0)
    return synthesize(c * np.exp(-mu * t), grid)


def spectral_error(scheme: Scheme | str, M: int, m: int = 1, part: str = "abs") -> float:
    """|mu_m - lambda_m| (or of its real/imaginary part) on an M-point grid."""
    grid = Grid(M)
    scheme = parse_scheme(scheme)
    diff = discrete_eigenvalue(scheme, grid, m) - complex(continuous_eigenvalue(scheme, m))
    if part == "abs":
        return abs(diff)
    if part == "real":
        return abs(diff.real)
    if part == "imag":
        return abs(diff.imag)
    raise ValueError(f"part must be 'abs', 'real' or 'imag', got {part!r}")


def spectral_convergence(
    scheme: Scheme | str, Ms=(31, 63, 125), m: int = 1, part: str = "abs"
) -> tuple[float, np.ndarray]:
    """
    Observed order p in |mu_m - lambda_m| ~ h^p for fixed m.

    Returns the fitted slope and the per-M errors.
    """
    errors = np.array([spectral_error(scheme, M, m, part) for M in Ms])
    h = 1.0 / np.asarray(Ms, dtype=float)
    return loglog_slope(h, errors), errors
