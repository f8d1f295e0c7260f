"""
Uniform periodic grid on [0, 1), grid functions and Fourier harmonics.

Grid points are x_i = i*h, i = 0..M-1, with M*h = 1. The discrete inner
product is

    (y, w) = sum_i y_i * conj(w_i) * h

so that the harmonics w_m(x) = exp(i 2 pi m x), |m| <= (M-1)/2, form an
orthonormal basis. M is required to be odd so that every operator uses the
same symmetric harmonic range.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np


@dataclass(frozen=True)
class Grid:
    """Uniform periodic mesh with M points and step h = 1/M."""

    M: int

    def __post_init__(self):
        if isinstance(self.M, bool) or not isinstance(self.M, (int, np.integer)):
            raise TypeError(f"M must be an integer, got {self.M!r}")
        if self.M < 3:
            raise ValueError(f"M must be odd and at least 3, got M={self.M}")
        if self.M % 2 == 0:
            raise ValueError(
                f"M must be odd (harmonics are indexed m = -(M-1)/2..(M-1)/2), got M={self.M}"
            )
        object.__setattr__(self, "M", int(self.M))

    @property
    def h(self) -> float:
        return 1.0 / self.M

    @property
    def x(self) -> np.ndarray:
        return np.arange(self.M) * self.h

    @property
    def m_max(self) -> int:
        return (self.M - 1) // 2

    @property
    def harmonics(self) -> np.ndarray:
        """Harmonic indices -(M-1)/2, ..., (M-1)/2 in ascending order."""
        return np.arange(-self.m_max, self.m_max + 1)

    def index_of(self, m: int) -> int:
        """Position of harmonic ``m`` in arrays ordered like :attr:`harmonics`."""
        check_harmonic(self, m)
        return int(m) + self.m_max

    @cached_property
    def mode_matrix(self) -> np.ndarray:
        """M x M matrix whose column j is the harmonic ``harmonics[j]``."""
        # reduce i*m mod M in integers so the phase is exact before scaling
        phase = np.outer(np.arange(self.M), self.harmonics) % self.M
        return np.exp(2j * np.pi * phase / self.M)


def make_grid(M: int) -> Grid:
    return Grid(M)


def check_harmonic(grid: Grid, m: int) -> None:
    if abs(int(m)) > grid.m_max:
        raise IndexError(
            f"harmonic index m={m} outside [-{grid.m_max}, {grid.m_max}] for M={grid.M}"
        )


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Complex periodic grid function; ``values[i]`` is the value at x_i."""

    values: np.ndarray
    grid: Grid

    def __post_init__(self):
        values = np.array(self.values, dtype=complex)
        if values.shape != (self.grid.M,):
            raise ValueError(
                f"expected {self.grid.M} values for M={self.grid.M}, got shape {values.shape}"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self):
        return self.grid.M

    def __add__(self, other):
        _same_grid(self, other)
        return GridFunction(self.values + other.values, self.grid)

    def __sub__(self, other):
        _same_grid(self, other)
        return GridFunction(self.values - other.values, self.grid)

    def __mul__(self, scalar):
        return GridFunction(scalar * self.values, self.grid)

    __rmul__ = __mul__

    def __neg__(self):
        return GridFunction(-self.values, self.grid)

    @classmethod
    def zeros(cls, grid: Grid) -> GridFunction:
        return cls(np.zeros(grid.M, dtype=complex), grid)

    @classmethod
    def from_callable(cls, grid: Grid, f) -> GridFunction:
        return cls(f(grid.x), grid)


def _same_grid(y: GridFunction, w: GridFunction) -> None:
    if y.grid != w.grid:
        raise ValueError(f"grid mismatch: M={y.grid.M} vs M={w.grid.M}")


def inner_product(y: GridFunction, w: GridFunction) -> complex:
    """(y, w) = sum y * conj(w) * h; linear in ``y``, conjugate-linear in ``w``."""
    _same_grid(y, w)
    return complex(np.vdot(w.values, y.values) * y.grid.h)


def norm(y: GridFunction) -> float:
    return float(np.sqrt(np.real(inner_product(y, y))))


def fourier_mode(grid: Grid, m: int, alias: bool = False) -> GridFunction:
    """
    Harmonic w_m(x_i) = exp(i 2 pi m i h).

    Indices outside [-(M-1)/2, (M-1)/2] are rejected unless ``alias`` is set,
    in which case the (identical) aliased grid function is returned.
    """
    if not alias:
        check_harmonic(grid, m)
    phase = (np.arange(grid.M) * int(m)) % grid.M
    return GridFunction(np.exp(2j * np.pi * phase / grid.M), grid)


def harmonic_coefficients(y: GridFunction) -> np.ndarray:
    """
    Coefficients c_m = (y, w_m) ordered like ``y.grid.harmonics``.

    Direct O(M^2) summation; y == sum_m c_m w_m.
    """
    grid = y.grid
    return grid.mode_matrix.conj().T @ y.values * grid.h


def synthesize(coeffs: np.ndarray, grid: Grid) -> GridFunction:
    """Inverse of :func:`harmonic_coefficients`."""
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.shape != (grid.M,):
        raise ValueError(f"expected {grid.M} coefficients, got shape {coeffs.shape}")
    return GridFunction(grid.mode_matrix @ coeffs, grid)
