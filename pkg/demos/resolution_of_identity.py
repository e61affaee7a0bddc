"""Overcompleteness in numbers: the diagonal of the integrated projector for both
families, plus the profile the exponent-1 disk measure would give instead."""

import numpy as np

from interpcs import measure

n = np.arange(8)
for k in (0.5, 1.0):
    R = measure.identity_resolution_algebraic(k, 32)
    print(f"algebraic k={k}: diag - 1 =", np.array2string(np.diag(R).real[:8] - 1, precision=2))
for k in (0.25, 0.5, 0.75):
    d2 = np.diag(measure.identity_resolution_perelomov(k, 32)).real[:8]
    d1 = np.diag(measure.identity_resolution_perelomov(k, 32, exponent=1)).real[:8]
    print(f"perelomov k={k}: exponent 2 diag - 1 =", np.array2string(d2 - 1, precision=2))
    print(f"               exponent 1 diag*(1+kn)/d0 - 1 =", np.array2string(d1 / d1[0] * (1 + k * n) - 1, precision=2))
