"""Wigner function of |2.5, k=0.5> on a coarse grid, with its minimum and integral.

Pass a filename to save the grid as .npz for plotting.
"""

import sys

import numpy as np

from interpcs import observables, states

psi = states.algebraic_cs(2.5, 0.5)
grid = observables.wigner_grid(psi, step=0.1)
iy, ix = np.unravel_index(np.argmin(grid.values), grid.values.shape)
print(f"dim = {psi.size}")
print(f"integral = {grid.integral():.12f}")
print(f"min W = {grid.minimum():.5f} at z = {grid.re[ix]:+.2f} {grid.im[iy]:+.2f}i")
print(f"max W = {grid.values.max():.5f}")
if len(sys.argv) > 1:
    np.savez(sys.argv[1], re=grid.re, im=grid.im, W=grid.values)
