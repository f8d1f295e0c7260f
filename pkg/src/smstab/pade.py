"""
Pade approximants R_lm(z) = P_lm(z) / Q_lm(z) of exp(-z).

    P_lm(z) = l!/(l+m)! * sum_{k=0}^{l} (l+m-k)! / (k! (l-k)!) * (-z)^k
    Q_lm(z) = m!/(l+m)! * sum_{k=0}^{m} (l+m-k)! / (k! (m-k)!) * z^k

R_lm(z) = exp(-z) + O(z^(l+m+1)). Applied to tau*Lambda, R_lm is the
transition operator of the two-level scheme

    Q_lm(tau Lambda) y_{n+1} = P_lm(tau Lambda) y_n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np
from numpy.polynomial import polynomial as P

from ._fit import loglog_slope

MAX_DEGREE_SUM = 12


class PoleError(ArithmeticError):
    """Q_lm vanishes (numerically) at the evaluation point."""

    def __init__(self, z, message=None):
        self.z = z
        super().__init__(message or f"denominator of Pade approximant vanishes near z={z!r}")


def _exact_coeffs(l: int, m: int) -> tuple[list[Fraction], list[Fraction]]:
    n = l + m
    p = [
        Fraction(factorial(l) * factorial(n - k) * (-1) ** k, factorial(n) * factorial(k) * factorial(l - k))
        for k in range(l + 1)
    ]
    q = [
        Fraction(factorial(m) * factorial(n - k), factorial(n) * factorial(k) * factorial(m - k))
        for k in range(m + 1)
    ]
    return p, q


@dataclass(frozen=True, eq=False)
class PadeScheme:
    """Coefficients of P_lm and Q_lm in ascending powers of z."""

    l: int
    m: int
    p_coeffs: np.ndarray
    q_coeffs: np.ndarray

    def __repr__(self):
        return f"PadeScheme(l={self.l}, m={self.m})"

    @property
    def order(self) -> int:
        """Local order l + m (error O(z^(l+m+1)))."""
        return self.l + self.m

    def __call__(self, z):
        return eval_R(self, z)

    def exact_coeffs(self) -> tuple[list[Fraction], list[Fraction]]:
        return _exact_coeffs(self.l, self.m)


def pade_coeffs(l: int, m: int) -> PadeScheme:
    """Build the (l, m) approximant; 1 <= l + m <= 12."""
    if isinstance(l, bool) or isinstance(m, bool) or int(l) != l or int(m) != m:
        raise TypeError(f"degrees must be integers, got l={l!r}, m={m!r}")
    l, m = int(l), int(m)
    if l < 0 or m < 0:
        raise ValueError(f"degrees must be nonnegative, got l={l}, m={m}")
    if not 1 <= l + m <= MAX_DEGREE_SUM:
        raise ValueError(f"need 1 <= l + m <= {MAX_DEGREE_SUM}, got l + m = {l + m}")
    p, q = _exact_coeffs(l, m)
    p_arr = np.array([float(c) for c in p])
    q_arr = np.array([float(c) for c in q])
    p_arr.setflags(write=False)
    q_arr.setflags(write=False)
    return PadeScheme(l, m, p_arr, q_arr)


def _horner(coeffs: np.ndarray, z):
    out = np.zeros_like(z, dtype=complex) + coeffs[-1]
    for c in coeffs[-2::-1]:
        out = out * z + c
    return out


def eval_R(scheme: PadeScheme, z):
    """
    R_lm(z) by Horner evaluation; ``z`` may be a scalar or an array.

    Raises :class:`PoleError` where |Q(z)| <= 1e-14 * max|q_k|.
    """
    z_arr = np.asarray(z, dtype=complex)
    num = _horner(scheme.p_coeffs, z_arr)
    den = _horner(scheme.q_coeffs, z_arr)
    bad = np.abs(den) <= 1e-14 * np.max(np.abs(scheme.q_coeffs))
    if np.any(bad):
        raise PoleError(complex(z_arr[bad].flat[0]))
    out = num / den
    return complex(out) if out.ndim == 0 else out


def stability_modulus(scheme: PadeScheme, y):
    """|R_lm(i y)| on the imaginary axis."""
    out = np.abs(eval_R(scheme, 1j * np.asarray(y, dtype=float)))
    return float(out) if np.ndim(out) == 0 else out


# extra Taylor terms kept in the residual; the next one is below 0.5^40/40! relative
_TAIL_TERMS = 40


def order_residual(scheme: PadeScheme, z_samples) -> float:
    """
    Slope of log|R(z) - exp(-z)| against log z over real ``z_samples`` in (0, 0.5].

    The residual is (P - Q exp(-z)) / Q with the numerator summed from its
    exact Taylor coefficients, which vanish through z^(l+m). This avoids
    the cancellation of evaluating R(z) - exp(-z) directly at small z.
    """
    z = np.asarray(z_samples, dtype=float)
    if z.ndim != 1 or z.size < 4:
        raise ValueError("need at least 4 samples")
    if np.any(z <= 0) or np.any(z > 0.5):
        raise ValueError("samples must lie in (0, 0.5]")
    if np.unique(z).size < 2:
        raise ValueError("samples must not all coincide")
    p, q = scheme.exact_coeffs()
    top = len(p) + len(q) + _TAIL_TERMS
    num = [
        (p[k] if k < len(p) else 0)
        - sum(q[j] * Fraction((-1) ** (k - j), factorial(k - j)) for j in range(min(k, len(q) - 1) + 1))
        for k in range(top)
    ]
    num = np.array([float(c) for c in num])
    err = np.abs(P.polyval(z, num) / P.polyval(z, scheme.q_coeffs))
    if np.any(err == 0):
        raise ValueError("residual underflows to zero; choose larger samples")
    return loglog_slope(z, err)


@dataclass(frozen=True, eq=False)
class SchemeMatrices:
    """
    Canonical form B (y_{n+1} - y_n)/tau + A y_n = 0 as polynomials in tau*Lambda.

    B = sum_k b_coeffs[k] (tau Lambda)^k and
    A = (1/tau) * sum_k a_coeffs[k] (tau Lambda)^k.
    """

    a_coeffs: np.ndarray
    b_coeffs: np.ndarray

    def matrices(self, lam: np.ndarray, tau: float) -> tuple[np.ndarray, np.ndarray]:
        """Dense (A, B) for the matrix ``lam`` and step ``tau``."""
        X = tau * np.asarray(lam)
        return matrix_polynomial(self.a_coeffs, X) / tau, matrix_polynomial(self.b_coeffs, X)


def scheme_matrices(scheme: PadeScheme) -> SchemeMatrices:
    n = max(scheme.l, scheme.m) + 1
    p = np.zeros(n)
    q = np.zeros(n)
    p[: scheme.l + 1] = scheme.p_coeffs
    q[: scheme.m + 1] = scheme.q_coeffs
    a = q - p
    a[0] = 0.0
    a = np.trim_zeros(a, "b")
    return SchemeMatrices(a if a.size else np.zeros(1), q[: scheme.m + 1].copy())


def matrix_polynomial(coeffs, X: np.ndarray) -> np.ndarray:
    """sum_k coeffs[k] X^k by Horner's rule."""
    X = np.asarray(X)
    eye = np.eye(X.shape[0])
    out = coeffs[-1] * eye
    for c in coeffs[-2::-1]:
        out = out @ X + c * eye
    return out
