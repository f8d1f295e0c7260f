"""
Time stepping and what the classification predicts
===================================================

Runs the two-level schemes on M = 31 and checks the behaviour against the
verdicts: neutral schemes keep the norm, dissipative ones lose it, and SM
schemes on diffusion keep the high-to-low harmonic ratio falling.
"""

# %%
import warnings

import numpy as np

from smstab import (
    Grid,
    InitialData,
    SimulationConfig,
    convergence_study,
    discrete_eigenvalue,
    simulate,
    stability_estimate_check,
)

warnings.simplefilter("ignore")
grid = Grid(31)

# %%
# Central convection: the diagonal scheme keeps the norm, the implicit one
# loses a fixed fraction per step.
for lm in [(1, 1), (0, 1)]:
    traj = simulate(SimulationConfig(grid, "central", lm, 0.01, 100, InitialData.mode(3)))
    print(f"R_{lm[0]}{lm[1]}: norm {traj.norms[0]:.6f} -> {traj.norms[-1]:.6f}")
mu3 = discrete_eigenvalue("central", grid, 3)
print("predicted per-step factor for R_01:", (1 + abs(0.01 * mu3) ** 2) ** -0.5)

# %%
# Diffusion with two harmonics: the ratio |c_5| / |c_1| keeps falling.
traj = simulate(SimulationConfig(grid, "diff2", (0, 1), 1e-3, 50, InitialData.harmonics({1: 1, 5: 1})))
ratio = traj.amplitude(5) / traj.amplitude(1)
print("amplitude ratio every 10 steps:", " ".join(f"{r:.3e}" for r in ratio[::10]))

# %%
# Spectral and physical-space steppers are independent computations of the
# same scheme.
cfg = SimulationConfig(grid, "third3", (2, 2), 1e-3, 100, InitialData.gaussian(0.1))
a = simulate(cfg).final.values
b = simulate(cfg, path="physical").final.values
print("spectral vs physical after 100 steps:", np.max(np.abs(a - b)))

# %%
# Global order in time is l + m.
taus = [0.1, 0.05, 0.025, 0.0125]
for lm in [(0, 2), (1, 1), (2, 2)]:
    res = convergence_study(SimulationConfig(grid, "central", lm, 0.1, 1, InitialData.mode(1)), taus, T=0.1)
    print(f"R_{lm[0]}{lm[1]}: slope {res.slope:.3f}")

# %%
# A superdiagonal scheme lets the norm grow; the check names the first step.
traj = simulate(SimulationConfig(grid, "central", (2, 1), 0.5, 10, InitialData.gaussian(0.1)))
print("R_21 norm check:", stability_estimate_check(traj))
