"""Numerical certificates for the structure of the interpolating algebra.

Every check returns a :class:`CertificationReport`; a failed tolerance is a
report outcome, not an exception.  Matrix identities are compared on the
top-left block that the truncation cannot reach (see :func:`fock.interior`).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import fock
from .specfun import log_rising_products
from .states import disentangled_params

__all__ = [
    "CertificationReport",
    "PowerSeries",
    "verify_commutators",
    "verify_w3_realization",
    "casimir_check",
    "casimir_value",
    "verify_disentanglement",
    "series_representation",
    "basis_weights",
    "differential_rep_check",
    "differential_rep_commutators",
]


@dataclass(frozen=True)
class CertificationReport:
    name: str
    k: float
    dim: int
    residual: float
    block: int
    tol: float

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tol)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["passed"] = self.passed
        return out


def _maxabs(M: np.ndarray) -> float:
    return float(np.max(np.abs(M))) if M.size else 0.0


def verify_commutators(k: float, dim: int = 60, tol: float = 1e-10) -> CertificationReport:
    """[A0, A+-] = +-k A+- and [A+, A-] = -2 A0 away from the truncation edge."""
    if dim < 8:
        raise ValueError("dim must be at least 8")
    c = fock.make_context(k, dim)
    res = max(
        _maxabs(fock.interior(fock.commutator(c.A0, c.Ap) - c.k * c.Ap, 1)),
        _maxabs(fock.interior(fock.commutator(c.A0, c.Am) + c.k * c.Am, 1)),
        _maxabs(fock.interior(fock.commutator(c.Ap, c.Am) + 2.0 * c.A0, 2)),
    )
    return CertificationReport("commutators", c.k, dim, res, dim - 2, tol)


def verify_w3_realization(k: float, dim: int = 60, tol: float = 1e-12) -> CertificationReport:
    """[B-, A+] = I for every k."""
    c = fock.make_context(k, dim)
    res = _maxabs(fock.interior(fock.commutator(c.Bm, c.Ap) - c.identity, 1))
    return CertificationReport("w3_realization", c.k, dim, res, dim - 1, tol)


def casimir_value(k: float) -> float:
    return 0.5 * (0.5 - k)


def casimir_check(k: float, dim: int = 60, tol: float = 1e-12) -> CertificationReport:
    """A0^2 - (k/2){A-, A+} = (1/2)(1/2 - k) I on the interior block."""
    if dim < 4:
        raise ValueError("dim must be at least 4")
    c = fock.make_context(k, dim)
    C = c.A0 @ c.A0 - 0.5 * c.k * fock.anticommutator(c.Am, c.Ap)
    res = _maxabs(fock.interior(C - casimir_value(c.k) * c.identity, 1))
    return CertificationReport("casimir", c.k, dim, res, dim - 1, tol)


def verify_disentanglement(
    alpha: complex, k: float, dim: int = 120, block: int = 20, tol: float = 1e-8
) -> CertificationReport:
    """exp(alpha A+ - alpha* A-) against exp(beta A+) exp(gamma A0) exp(delta A-).

    The left side is exponentiated on the full ``dim`` levels.  The factors on
    the right are triangular (A+ lower, A- upper, A0 diagonal), so their
    product restricted to the top-left block only involves that block and is
    computed there exactly.
    """
    if dim < 4 * block:
        raise ValueError("dim must be at least 4 * block")
    alpha = complex(alpha)
    c = fock.make_context(k, dim)
    U1 = fock.matrix_exp(alpha * c.Ap - alpha.conjugate() * c.Am)[:block, :block]
    prm = disentangled_params(alpha, c.k)
    Ap = c.Ap[:block, :block]
    Am = c.Am[:block, :block]
    a0 = np.diag(c.A0)[:block].real
    U2 = fock.matrix_exp(prm.beta * Ap) @ np.diag(np.exp(prm.gamma * a0)) @ fock.matrix_exp(prm.delta * Am)
    return CertificationReport("disentanglement", c.k, dim, _maxabs(U1 - U2), block, tol)


class PowerSeries:
    """Truncated power series sum_j a_j w^j in one formal variable.

    ``derivative`` shortens the coefficient vector by one; ``times_variable``
    lengthens it by one.  Sums pad to the longer operand.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients):
        c = np.atleast_1d(np.asarray(coefficients, dtype=complex))
        self.coefficients = c if c.size else np.zeros(1, dtype=complex)

    @classmethod
    def monomial(cls, degree: int, coefficient: complex = 1.0) -> "PowerSeries":
        c = np.zeros(degree + 1, dtype=complex)
        c[degree] = coefficient
        return cls(c)

    @property
    def order(self) -> int:
        return self.coefficients.size

    def derivative(self) -> "PowerSeries":
        c = self.coefficients
        if c.size == 1:
            return PowerSeries([0.0])
        return PowerSeries(c[1:] * np.arange(1, c.size))

    def times_variable(self) -> "PowerSeries":
        return PowerSeries(np.concatenate(([0.0], self.coefficients)))

    def padded(self, order: int) -> np.ndarray:
        out = np.zeros(max(order, self.order), dtype=complex)
        out[: self.order] = self.coefficients
        return out

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        m = max(self.order, other.order)
        return PowerSeries(self.padded(m) + other.padded(m))

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        return self + other * -1.0

    def __mul__(self, scalar: complex) -> "PowerSeries":
        return PowerSeries(self.coefficients * scalar)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"PowerSeries({self.coefficients!r})"


def series_representation(k: float, rep: str) -> dict:
    """The generators as maps on :class:`PowerSeries`.

    ``algebraic``: A+ = w, A- = d/dw + k w d^2/dw^2, A0 = k w d/dw + 1/2
    ``group``:     A+ = k w^2 d/dw + w, A- = d/dw, A0 = k w d/dw + 1/2
    """
    k = float(k)

    def A0(f):
        return k * f.derivative().times_variable() + f * 0.5

    if rep == "algebraic":
        return {
            "Ap": lambda f: f.times_variable(),
            "Am": lambda f: f.derivative() + k * f.derivative().derivative().times_variable(),
            "A0": A0,
        }
    if rep == "group":
        return {
            "Ap": lambda f: k * f.derivative().times_variable().times_variable() + f.times_variable(),
            "Am": lambda f: f.derivative(),
            "A0": A0,
        }
    raise ValueError(f"unknown representation {rep!r}")


def basis_weights(k: float, rep: str, order: int) -> np.ndarray:
    """Coefficient of w^m representing |m>.

    algebraic: 1/sqrt(m! R_m); group: sqrt(R_m / m!).
    """
    logR = log_rising_products(k, order)
    logf = np.concatenate(([0.0], np.cumsum(np.log(np.arange(1, order)))))[:order]
    if rep == "algebraic":
        return np.exp(-0.5 * (logf + logR))
    if rep == "group":
        return np.exp(0.5 * (logR - logf))
    raise ValueError(f"unknown representation {rep!r}")


def differential_rep_check(k: float, rep: str, m: int, order: int, tol: float = 1e-12) -> CertificationReport:
    """Compare the series action on the representative of |m> with the Fock action.

    The residual is the largest coefficient mismatch over A+, A-, A0, relative
    to the largest coefficient involved.
    """
    if not m < order - 2:
        raise OverflowError(f"degree {m} + 1 does not fit in series order {order}")
    ops = series_representation(k, rep)
    wts = basis_weights(k, rep, order)
    ctx = fock.make_context(k, order)
    ket = fock.basis(m, order)
    f = PowerSeries.monomial(m, wts[m])
    res = 0.0
    for name in ("Ap", "Am", "A0"):
        got = ops[name](f)
        if got.order > order:
            raise OverflowError(f"{name} raised the degree beyond {order - 1}")
        expect = (getattr(ctx, name) @ ket) * wts
        g = got.padded(order)
        scale = max(np.max(np.abs(expect)), np.max(np.abs(g)))
        if scale > 0.0:
            res = max(res, float(np.max(np.abs(g - expect)) / scale))
    return CertificationReport(f"differential_rep_{rep}", float(k), order, res, m, tol)


def differential_rep_commutators(k: float, rep: str, order: int, tol: float = 1e-12) -> CertificationReport:
    """[A0, A+-] = +-k A+- and [A+, A-] = -2 A0 as series maps, monomials up to degree order-3."""
    ops = series_representation(k, rep)
    Ap, Am, A0 = ops["Ap"], ops["Am"], ops["A0"]
    res = 0.0
    for m in range(order - 2):
        f = PowerSeries.monomial(m)
        checks = (
            A0(Ap(f)) - Ap(A0(f)) - k * Ap(f),
            A0(Am(f)) - Am(A0(f)) + k * Am(f),
            Ap(Am(f)) - Am(Ap(f)) + 2.0 * A0(f),
        )
        # coefficients grow like m^2; compare relative to that scale
        for d in checks:
            res = max(res, float(np.max(np.abs(d.coefficients))) / max(1.0, m * m))
    return CertificationReport(f"series_commutators_{rep}", float(k), order, res, order - 3, tol)
