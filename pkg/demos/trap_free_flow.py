"""Gradient ascent on the unitary group never gets stuck below the maximum.

Random starts all climb to J_max.  Starts placed next to a saddle linger
there for a while (the gradient is tiny) before they escape.
"""
import numpy as np

from lca import Spectrum
from lca.flow import ascend, trap_audit
from lca.matcore import random_unitary

rho = Spectrum((0.5, 0.3, 0.2), (1, 1, 1))
theta = Spectrum((1.0, 0.5, 0.0), (1, 1, 1))

audit = trap_audit(rho, theta, n_starts=10, seed=7)
s = audit.summary
print(f"J_max = {s['J_max']:.6f}")
print(f"fraction of random starts reaching J_max: {s['fraction_at_max']}")
print(f"saddle starts: {s['saddle_starts']}, escaped: {s['saddle_escape_fraction']}")
print(f"mean iterations  random: {s['mean_iterations_haar']:.0f}  near saddle: {s['mean_iterations_saddle']:.0f}")
print()
for row in s["histogram"]:
    print(f"  level {row['level']} (J = {row['J']:.3f}): {row['count']} runs")
print()

traj = ascend(random_unitary(3, 0), rho.expanded(), theta.expanded())
marks = np.unique(np.geomspace(1, len(traj.J_series), 8).astype(int)) - 1
for i in marks:
    print(f"  iter {i:4d}  J = {traj.J_series[i]:.12f}")
print("status:", traj.status)
