"""
Periodic finite-difference operators stored as stencils.

A stencil maps integer offsets k to real coefficients; its action on a
periodic grid function is circulant:

    (Op y)_i = sum_k taps[k] * y_{(i + k) mod M}

Built-in convection approximations of du/dx and diffusion approximations of
-d2u/dx2 are provided, together with their convex combination
chi*C + (1 - chi)*D.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Union

import numpy as np

from .grid import Grid, GridFunction, inner_product


class ConvectionScheme(enum.Enum):
    UPWIND1 = "upwind1"
    CENTRAL = "central"
    UPWIND2 = "upwind2"
    THIRD_ORDER = "third3"


class DiffusionScheme(enum.Enum):
    SECOND = "diff2"
    FOURTH = "diff4"


@dataclass(frozen=True)
class MixedScheme:
    """chi * convection + (1 - chi) * diffusion."""

    chi: float
    convection: ConvectionScheme
    diffusion: DiffusionScheme

    def __post_init__(self):
        if not 0.0 <= self.chi <= 1.0:
            raise ValueError(f"chi must lie in [0, 1], got {self.chi}")

    @property
    def name(self) -> str:
        return f"{self.convection.value}+{self.diffusion.value}@chi={self.chi!r}"


Scheme = Union[ConvectionScheme, DiffusionScheme, MixedScheme]

# Coefficients as multiples of 1/h (convection) or 1/h^2 (diffusion).
_CONVECTION_TAPS = {
    ConvectionScheme.UPWIND1: ({0: 1.0, -1: -1.0}, 1.0),
    ConvectionScheme.CENTRAL: ({1: 1.0, -1: -1.0}, 2.0),
    ConvectionScheme.UPWIND2: ({0: 3.0, -1: -4.0, -2: 1.0}, 2.0),
    ConvectionScheme.THIRD_ORDER: ({1: 2.0, 0: 3.0, -1: -6.0, -2: 1.0}, 6.0),
}

_DIFFUSION_TAPS = {
    DiffusionScheme.SECOND: ({-1: -1.0, 0: 2.0, 1: -1.0}, 1.0),
    # -d+d- + (h^2/12)(d+d-)^2 expanded
    DiffusionScheme.FOURTH: ({-2: 1.0, -1: -16.0, 0: 30.0, 1: -16.0, 2: 1.0}, 12.0),
}


def _freeze(taps: Mapping[int, float]) -> Mapping[int, float]:
    return MappingProxyType({int(k): float(v) for k, v in sorted(taps.items())})


@dataclass(frozen=True, eq=False)
class StencilOperator:
    """Circulant difference operator on ``grid`` defined by ``taps``."""

    taps: Mapping[int, float]
    grid: Grid
    label: str = "custom"
    scheme: Scheme | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "taps", _freeze(self.taps))

    def __call__(self, y: GridFunction) -> GridFunction:
        return apply(self, y)

    def __repr__(self):
        taps = ", ".join(f"{k}: {v:.6g}" for k, v in self.taps.items())
        return f"StencilOperator({self.label}, M={self.grid.M}, {{{taps}}})"

    @property
    def width(self) -> int:
        return max((abs(k) for k in self.taps), default=0)

    def symbol(self, m) -> np.ndarray:
        """Eigenvalue on harmonic(s) ``m``: sum_k taps[k] exp(i 2 pi m k h)."""
        m = np.asarray(m)
        out = np.zeros(m.shape, dtype=complex)
        for k, c in self.taps.items():
            out = out + c * np.exp(2j * np.pi * ((m * k) % self.grid.M) / self.grid.M)
        return out


def build_convection(scheme: ConvectionScheme | str, grid: Grid) -> StencilOperator:
    scheme = ConvectionScheme(scheme)
    taps, denom = _CONVECTION_TAPS[scheme]
    scale = grid.M / denom
    return StencilOperator({k: c * scale for k, c in taps.items()}, grid, scheme.value, scheme)


def build_diffusion(scheme: DiffusionScheme | str, grid: Grid) -> StencilOperator:
    scheme = DiffusionScheme(scheme)
    taps, denom = _DIFFUSION_TAPS[scheme]
    width = max(abs(k) for k in taps)
    if grid.M < 2 * width + 1:
        raise ValueError(
            f"{scheme.value} needs a {2 * width + 1}-point stencil, grid has only M={grid.M}"
        )
    scale = grid.M * grid.M / denom
    return StencilOperator({k: c * scale for k, c in taps.items()}, grid, scheme.value, scheme)


def build_convection_diffusion(
    chi: float, conv: StencilOperator, diff: StencilOperator
) -> StencilOperator:
    """Tapwise combination chi * conv + (1 - chi) * diff."""
    if not 0.0 <= chi <= 1.0:
        raise ValueError(f"chi must lie in [0, 1], got {chi}")
    if conv.grid != diff.grid:
        raise ValueError(f"grid mismatch: M={conv.grid.M} vs M={diff.grid.M}")
    if chi == 1.0:
        taps = dict(conv.taps)
    elif chi == 0.0:
        taps = dict(diff.taps)
    else:
        taps = {}
        for k in set(conv.taps) | set(diff.taps):
            taps[k] = chi * conv.taps.get(k, 0.0) + (1.0 - chi) * diff.taps.get(k, 0.0)
    scheme = None
    if isinstance(conv.scheme, ConvectionScheme) and isinstance(diff.scheme, DiffusionScheme):
        scheme = MixedScheme(chi, conv.scheme, diff.scheme)
    label = f"{chi!r}*{conv.label}+{1.0 - chi!r}*{diff.label}"
    return StencilOperator(taps, conv.grid, label, scheme)


def parse_scheme(name: Scheme | str, chi: float | None = None) -> Scheme:
    """
    Scheme object from its command-line name.

    Names are ``upwind1``, ``central``, ``upwind2``, ``third3``, ``diff2``,
    ``diff4`` or a pair ``conv+diff`` which requires ``chi``. Scheme objects
    pass through unchanged.
    """
    if not isinstance(name, str):
        return name
    if "+" in name:
        conv_name, diff_name = name.split("+", 1)
        if chi is None:
            raise ValueError(f"operator {name!r} needs a chi value")
        return MixedScheme(chi, ConvectionScheme(conv_name), DiffusionScheme(diff_name))
    for kind in (ConvectionScheme, DiffusionScheme):
        try:
            return kind(name)
        except ValueError:
            pass
    raise ValueError(f"unknown operator {name!r}")


def build_operator(scheme: Scheme | str, grid: Grid, chi: float | None = None) -> StencilOperator:
    """Build any operator from a scheme object or its command-line name (see :func:`parse_scheme`)."""
    scheme = parse_scheme(scheme, chi)
    if isinstance(scheme, ConvectionScheme):
        return build_convection(scheme, grid)
    if isinstance(scheme, DiffusionScheme):
        return build_diffusion(scheme, grid)
    if isinstance(scheme, MixedScheme):
        return build_convection_diffusion(
            scheme.chi,
            build_convection(scheme.convection, grid),
            build_diffusion(scheme.diffusion, grid),
        )
    raise TypeError(f"not a scheme: {scheme!r}")


def apply(op: StencilOperator, y: GridFunction) -> GridFunction:
    if op.grid != y.grid:
        raise ValueError(f"grid mismatch: operator M={op.grid.M}, function M={y.grid.M}")
    out = np.zeros(op.grid.M, dtype=complex)
    for k, c in op.taps.items():
        out += c * np.roll(y.values, -k)
    return GridFunction(out, op.grid)


def adjoint(op: StencilOperator) -> StencilOperator:
    """Adjoint in L2(omega): taps'[k] = taps[-k]."""
    return StencilOperator({-k: c for k, c in op.taps.items()}, op.grid, f"adjoint({op.label})")


def split_symmetric_skew(op: StencilOperator) -> tuple[StencilOperator, StencilOperator]:
    """Return (sym, skew) with sym = (op + op*)/2 and skew = (op - op*)/2."""
    offsets = set(op.taps) | {-k for k in op.taps}
    sym, skew = {}, {}
    for k in offsets:
        a, b = op.taps.get(k, 0.0), op.taps.get(-k, 0.0)
        sym[k] = 0.5 * (a + b)
        skew[k] = 0.5 * (a - b)
    sym = {k: v for k, v in sym.items() if v != 0.0}
    skew = {k: v for k, v in skew.items() if v != 0.0}
    return (
        StencilOperator(sym, op.grid, f"sym({op.label})"),
        StencilOperator(skew, op.grid, f"skew({op.label})"),
    )


def energy(op: StencilOperator, y: GridFunction) -> float:
    """Re (op y, y)."""
    return float(np.real(inner_product(apply(op, y), y)))


def to_dense(op: StencilOperator) -> np.ndarray:
    M = op.grid.M
    mat = np.zeros((M, M))
    rows = np.arange(M)
    for k, c in op.taps.items():
        mat[rows, (rows + k) % M] += c
    return mat
