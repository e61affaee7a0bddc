"""Mandel Q across the interpolation: algebraic states stay sub-Poissonian,
displacement-generated ones super-Poissonian, and both meet the Glauber value
Q = 1 at k = 0."""

import numpy as np

from interpcs import observables, states

radii = np.linspace(0.25, 2.0, 8)
print(f"{'k':>5} {'|alpha|':>8} {'Q algebraic':>12} {'Q perelomov':>12}")
for k in (0.0, 0.25, 0.5, 1.0):
    for r in radii:
        qa = observables.q_parameter(states.algebraic_cs(r, k))
        qp = observables.q_parameter(states.perelomov_cs(r, k))
        print(f"{k:5.2f} {r:8.3f} {qa:12.6f} {qp:12.6f}")
