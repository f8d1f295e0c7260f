"""
Pade approximants of exp(-z) as time integrators
================================================

R_lm = P_l / Q_m matches exp(-z) through z^(l+m). Applied to dy/dt + L y = 0
it gives the two-level scheme Q(tau L) y_{n+1} = P(tau L) y_n, with
amplification factor R_lm(tau mu) on harmonic m.
"""

# %%
import numpy as np

from smstab import classify_skew, order_residual, pade_coeffs, stability_modulus

for l, m in [(0, 1), (1, 1), (0, 2), (2, 2)]:
    p, q = pade_coeffs(l, m).exact_coeffs()
    print(f"R_{l}{m}: P = {[str(c) for c in p]}, Q = {[str(c) for c in q]}")

# %%
# The local error |R(z) - exp(-z)| shrinks like z^(l+m+1).
z = np.geomspace(1e-3, 1e-2, 8)
for l, m in [(0, 1), (1, 1), (0, 2), (2, 2)]:
    print(f"R_{l}{m}: observed local order {order_residual(pade_coeffs(l, m), z):.3f}")

# %%
# On the imaginary axis (skew operators) the diagonal approximants are exactly
# neutral and R_01 damps like 1/sqrt(1 + y^2).
y = np.linspace(-100, 100, 1000)
print("max ||R_22(iy)| - 1| =", np.max(np.abs(stability_modulus(pade_coeffs(2, 2), y) - 1)))
print("max ||R_01(iy)| - 1/sqrt(1+y^2)| =",
      np.max(np.abs(stability_modulus(pade_coeffs(0, 1), y) - 1 / np.sqrt(1 + y**2))))

# %%
# Below the diagonal, damping holds only for the first two subdiagonals.
# R_03, R_04 and R_14 exceed 1 on part of the imaginary axis, so they are not
# A-stable even though l < m.
for m in range(1, 5):
    for l in range(m + 1):
        r = classify_skew(pade_coeffs(l, m))
        where = f" at y = {r.witness:.3f}" if r.witness is not None else ""
        print(f"R_{l}{m}: {r.verdict.value:18s} max |R(iy)| = {r.max_modulus:.4f}{where}")
