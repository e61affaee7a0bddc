"""Real special-function kernels: log-gamma, modified Bessel functions, rising products.

Everything here is written against the standard library and numpy only, so the
numerical paths used by the state constructors and the measures do not depend on
scipy.special.  Supported ranges:

* ``log_gamma``: x > 0.
* ``bessel_i``: real order, 0 <= x <= ~700 (ascending series).
* ``bessel_k``: real order, x > 0 (trapezoid rule on the cosh integral).
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "log_gamma",
    "gamma_signed",
    "rgamma",
    "bessel_i",
    "bessel_i_regularized",
    "bessel_k",
    "log_bessel_k",
    "rising_product",
    "log_rising_product",
    "log_rising_products",
]

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

# B_{2j} / (2j (2j - 1)) for the Stirling tail
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)

_STIRLING_MIN = 12.0


def _stirling(y: float) -> float:
    inv = 1.0 / y
    inv2 = inv * inv
    tail = 0.0
    for c in reversed(_STIRLING):
        tail = tail * inv2 + c
    return (y - 0.5) * math.log(y) - y + _HALF_LOG_2PI + tail * inv


def log_gamma(x: float) -> float:
    """Return ln Gamma(x) for x > 0."""
    x = float(x)
    if not x > 0.0:
        raise ValueError(f"log_gamma requires x > 0, got {x!r}")
    if x >= _STIRLING_MIN:
        return _stirling(x)
    # shift up with the recurrence; the product stays far from overflow
    prod = 1.0
    y = x
    while y < _STIRLING_MIN:
        prod *= y
        y += 1.0
    return _stirling(y) - math.log(prod)


def gamma_signed(z: float) -> tuple[float, float]:
    """Return ``(sign, ln|Gamma(z)|)`` for real z off the non-positive integers."""
    z = float(z)
    if z > 0.0:
        return 1.0, log_gamma(z)
    if z == math.floor(z):
        raise ValueError(f"Gamma has a pole at {z!r}")
    # reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z)
    s = math.sin(math.pi * z)
    sign = 1.0 if s > 0 else -1.0
    return sign, math.log(math.pi / abs(s)) - log_gamma(1.0 - z)


def rgamma(z: float) -> float:
    """Reciprocal gamma function 1/Gamma(z); zero at the poles."""
    z = float(z)
    if z <= 0.0 and z == math.floor(z):
        return 0.0
    sign, lg = gamma_signed(z)
    return sign * math.exp(-lg)


def bessel_i_regularized(nu: float, w: complex, *, tol: float = 1e-17) -> complex:
    """Entire function sum_m w^m / (m! Gamma(m + nu + 1)).

    This equals I_nu(2 sqrt(w)) / w^(nu/2) and is the piece of I_nu that is
    analytic in w, so it is safe for complex w.
    """
    nu = float(nu)
    if nu < 0.0 and nu == math.floor(nu):
        # 1/Gamma(m + nu + 1) vanishes for m < -nu: shift the index
        n = int(-nu)
        return w**n * bessel_i_regularized(float(n), w, tol=tol)
    t0 = rgamma(nu + 1.0)
    total = 1.0 + 0.0j
    term = 1.0 + 0.0j
    absw = abs(w)
    m = 0
    while True:
        term = term * w / ((m + 1) * (m + 1 + nu))
        total += term
        m += 1
        # all later ratios are below |w|/(m(m+nu)); stop once past the peak
        if m + nu > 0 and m * (m + nu) > absw and abs(term) <= tol * abs(total):
            break
        if not math.isfinite(abs(total)):
            raise OverflowError("bessel series overflowed")
        if m > 100000:
            raise ArithmeticError("bessel series did not converge")
    return t0 * total


def bessel_i(nu: float, x: float) -> float:
    """Modified Bessel function of the first kind I_nu(x) for real nu and x >= 0."""
    nu = float(nu)
    x = float(x)
    if x < 0.0:
        raise ValueError(f"bessel_i requires x >= 0, got {x!r}")
    if nu < 0.0 and nu == math.floor(nu):
        nu = -nu
    if x == 0.0:
        if nu == 0.0:
            return 1.0
        if nu > 0.0:
            return 0.0
        raise OverflowError("I_nu(0) is infinite for negative non-integer order")
    if x > 700.0 and x - 0.5 * math.log(2.0 * math.pi * x) > 709.0:
        raise OverflowError(f"I_{nu}({x}) exceeds the float range")
    reg = bessel_i_regularized(nu, 0.25 * x * x).real
    if reg == 0.0:
        return 0.0
    logval = nu * math.log(0.5 * x) + math.log(abs(reg))
    if logval > 709.0:
        raise OverflowError(f"I_{nu}({x}) exceeds the float range")
    return math.copysign(math.exp(logval), reg)


def _k_log_integrand(t: np.ndarray, nu: float, x: np.ndarray) -> np.ndarray:
    # log of exp(-x cosh t) cosh(nu t), written to avoid overflow in cosh(nu t)
    nt = nu * t
    return -x * np.cosh(t) + nt + np.log1p(np.exp(-2.0 * nt)) - math.log(2.0)


def log_bessel_k(nu: float, x) -> np.ndarray | float:
    """ln K_nu(x) for x > 0 via the trapezoid rule on int_0^inf exp(-x cosh t) cosh(nu t) dt.

    The integrand is analytic in a strip around the real axis and decays doubly
    exponentially, so the uniform trapezoid rule converges geometrically in 1/h.
    """
    nu = abs(float(nu))
    xa = np.asarray(x, dtype=float)
    scalar = xa.ndim == 0
    xa = np.atleast_1d(xa)
    if np.any(~(xa > 0.0)):
        raise ValueError("bessel_k requires x > 0")
    out = np.empty_like(xa)
    for i, xi in enumerate(xa):
        # stationary point of -x cosh t + nu t
        tpk = math.asinh(nu / xi) if nu > 0 else 0.0
        gpk = -xi * math.cosh(tpk) + nu * tpk
        # march out until the log-integrand has dropped by 45
        T = tpk + 1.0
        while -xi * math.cosh(T) + nu * T > gpk - 45.0:
            T += 1.0
        h = min(0.05, 0.5 / math.sqrt(xi))
        n = int(math.ceil(T / h))
        t = np.arange(n + 1) * h
        g = _k_log_integrand(t, nu, xi)
        gmax = g.max()
        w = np.exp(g - gmax)
        w[0] *= 0.5
        out[i] = gmax + math.log(h * w.sum())
    return float(out[0]) if scalar else out


def bessel_k(nu: float, x) -> np.ndarray | float:
    """Modified Bessel function of the second kind K_nu(x), x > 0, real order."""
    lk = log_bessel_k(nu, x)
    if np.any(np.asarray(lk) > 709.0):
        raise OverflowError("K_nu(x) exceeds the float range")
    return np.exp(lk) if isinstance(lk, np.ndarray) else math.exp(lk)


def rising_product(k: float, n: int) -> float:
    """Product prod_{j=0}^{n-1} (1 + j k), i.e. k^n (1/k)_n; equals n! at k = 1."""
    n = int(n)
    if n < 0:
        raise ValueError("n must be non-negative")
    p = 1.0
    for j in range(n):
        p *= 1.0 + j * k
    return p


def log_rising_product(k: float, n: int) -> float:
    """ln of :func:`rising_product`, usable where the product itself overflows."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return math.fsum(math.log1p(j * k) for j in range(int(n)))


def log_rising_products(k: float, nmax: int) -> np.ndarray:
    """Array of ln rising_product(k, n) for n = 0 .. nmax - 1."""
    terms = np.log1p(np.arange(max(nmax - 1, 0)) * float(k))
    return np.concatenate(([0.0], np.cumsum(terms)))[:nmax]
