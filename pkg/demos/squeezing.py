"""Where does Var x dip below the vacuum value 1/2 for the algebraic states?"""

import math

import numpy as np

from interpcs import observables, states

for k in (0.25, 0.5, 0.75, 1.0):
    best = (math.inf, None)
    for r in np.linspace(0.1, 2.5, 25):
        for phase in np.arange(8) * math.pi / 8:
            alpha = r * np.exp(1j * phase)
            v = observables.quadrature_variances(states.algebraic_cs(alpha, k))
            best = min(best, (v.var_x, alpha), key=lambda t: t[0])
    print(f"k={k:4.2f}  min Var x = {best[0]:.4f} at alpha = {best[1]:.3f}")
