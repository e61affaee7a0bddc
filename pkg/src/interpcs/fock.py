"""Truncated Fock-space engine.

States are plain complex numpy vectors over |0>..|D-1>, operators are dense
D x D complex arrays.  :class:`AlgebraContext` caches the ladder operators,
the deformed generators A0, A+, A- of the interpolating algebra, the
Heisenberg-Weyl companions B+, B- and the two quadratures.

Operator identities only hold away from the truncation edge; use
:func:`interior` to cut the top-left block before comparing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "AlgebraContext",
    "make_context",
    "annihilation",
    "creation",
    "number",
    "commutator",
    "anticommutator",
    "interior",
    "matrix_exp",
    "expectation",
    "basis",
]


def annihilation(dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1).astype(complex)


def creation(dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), -1).astype(complex)


def number(dim: int) -> np.ndarray:
    return np.diag(np.arange(dim, dtype=float)).astype(complex)


def basis(n: int, dim: int) -> np.ndarray:
    """Number state |n> as a length-``dim`` vector."""
    v = np.zeros(dim, dtype=complex)
    v[n] = 1.0
    return v


def _lowering(entries: np.ndarray) -> np.ndarray:
    # entries[n-1] sits at (n-1, n)
    return np.diag(entries.astype(complex), 1)


@dataclass(frozen=True)
class AlgebraContext:
    """Cached operator matrices for one (k, dim) pair."""

    k: float
    dim: int
    a: np.ndarray = field(repr=False)
    adag: np.ndarray = field(repr=False)
    n: np.ndarray = field(repr=False)
    A0: np.ndarray = field(repr=False)
    Am: np.ndarray = field(repr=False)
    Ap: np.ndarray = field(repr=False)
    Bm: np.ndarray = field(repr=False)
    Bp: np.ndarray = field(repr=False)
    x: np.ndarray = field(repr=False)
    p: np.ndarray = field(repr=False)
    identity: np.ndarray = field(repr=False)


def make_context(k: float, dim: int) -> AlgebraContext:
    """Build the operator set for deformation ``k`` in [0, 1] on ``dim`` levels."""
    k = float(k)
    if not 0.0 <= k <= 1.0:
        raise ValueError(f"k must lie in [0, 1], got {k!r}")
    if int(dim) != dim or dim < 2:
        raise ValueError(f"dim must be an integer >= 2, got {dim!r}")
    dim = int(dim)
    ns = np.arange(1, dim, dtype=float)
    deform = 1.0 + k * (ns - 1.0)  # 1 + k(n-1) >= 1 - k >= 0, equal to 1 at n = 1
    a = annihilation(dim)
    adag = creation(dim)
    Am = _lowering(np.sqrt(ns * deform))
    Bm = _lowering(np.sqrt(ns / deform))
    A0 = np.diag(k * np.arange(dim) + 0.5).astype(complex)
    x = (a + adag) / math.sqrt(2.0)
    p = (a - adag) / (1j * math.sqrt(2.0))
    mats = dict(
        a=a,
        adag=adag,
        n=number(dim),
        A0=A0,
        Am=Am,
        Ap=Am.conj().T.copy(),
        Bm=Bm,
        Bp=Bm.conj().T.copy(),
        x=x,
        p=p,
        identity=np.eye(dim, dtype=complex),
    )
    for m in mats.values():
        m.setflags(write=False)
    return AlgebraContext(k=k, dim=dim, **mats)


def _check_pair(X: np.ndarray, Y: np.ndarray) -> None:
    if X.shape != Y.shape or X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise ValueError(f"operator shapes differ: {X.shape} vs {Y.shape}")


def commutator(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    _check_pair(X, Y)
    return X @ Y - Y @ X


def anticommutator(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    _check_pair(X, Y)
    return X @ Y + Y @ X


def interior(M: np.ndarray, raising_degree: int) -> np.ndarray:
    """Top-left block with ``raising_degree`` edge rows/columns removed."""
    d = M.shape[0] - int(raising_degree)
    if d < 1:
        raise ValueError("truncation edge swallows the whole matrix")
    return M[:d, :d]


# Pade(13) coefficients and theta_13 (Higham, SIAM J. Matrix Anal. Appl. 26, 2005)
_PADE13 = (
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
)
_THETA13 = 5.371920351148152


def matrix_exp(X: np.ndarray) -> np.ndarray:
    """exp(X) by scaling and squaring around a degree-13 Pade approximant."""
    X = np.asarray(X, dtype=complex)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise ValueError("matrix_exp needs a square matrix")
    if not np.all(np.isfinite(X)):
        raise OverflowError("matrix_exp received non-finite entries")
    norm = np.abs(X).sum(axis=0).max() if X.size else 0.0
    s = 0
    if norm > _THETA13:
        s = int(math.ceil(math.log2(norm / _THETA13)))
    A = X / 2.0**s
    b = _PADE13
    ident = np.eye(X.shape[0], dtype=complex)
    A2 = A @ A
    A4 = A2 @ A2
    A6 = A4 @ A2
    U = A @ (A6 @ (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * ident)
    V = A6 @ (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * ident
    R = np.linalg.solve(V - U, V + U)
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(s):
            R = R @ R
    if not np.all(np.isfinite(R)):
        raise OverflowError("matrix_exp overflowed while squaring")
    return R


def expectation(state: np.ndarray, op: np.ndarray) -> complex:
    """<psi| op |psi> for a normalized state vector."""
    state = np.asarray(state)
    if op.shape != (state.size, state.size):
        raise ValueError(f"dimension mismatch: state {state.size}, operator {op.shape}")
    return complex(np.vdot(state, op @ state))
