"""
Spectral-mimetic classification
===============================

For a skew operator the exact solution keeps every harmonic amplitude. A
scheme mimics that only if |R(iy)| = 1. For a self-adjoint nonnegative
operator the exact solution damps higher harmonics faster. A scheme mimics
that if s(x) = R(x) is nonnegative and nonincreasing for x >= 0.
"""

# %%
import warnings

import numpy as np

from smstab import Grid, build_operator, classify_operator_problem, classify_selfadjoint, pade_coeffs

print("self-adjoint verdicts (x_max = 1e6):")
for l, m in [(0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (2, 2), (2, 1)]:
    r = classify_selfadjoint(pade_coeffs(l, m), 1e6)
    extra = f", tau*mu_max <= {r.condition:.6g}" if r.condition is not None else ""
    print(f"  R_{l}{m}: {r.verdict.value}{extra}")

# %%
# Crank-Nicolson, R_11 = (1 - x/2)/(1 + x/2), turns negative past x = 2, so
# on diffusion it is SM only while tau * mu_max <= 2. On M = 31 that is a
# step of about 5e-4.
grid = Grid(31)
diff2 = build_operator("diff2", grid)
mu_max = float(np.max(diff2.symbol(grid.harmonics).real))
print("mu_max =", mu_max, "-> largest SM step", 2 / mu_max)

for factor in (1.0, 4.0):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        rep = classify_operator_problem(diff2, pade_coeffs(1, 1), factor / mu_max)
    print(f"tau*mu_max = {rep.x_max:.3f}: {rep.selfadjoint.verdict.value}, warnings: {[str(w.message) for w in caught]}")

# %%
# Operators are routed by how much their spectrum is dominated by the skew part.
for name in ("central", "third3", "upwind1", "diff4"):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rep = classify_operator_problem(build_operator(name, grid), pade_coeffs(1, 1), 1e-3)
    print(f"{name:8s} route={rep.route:11s} Im/Re ratio={rep.skew_ratio:.3g}")
