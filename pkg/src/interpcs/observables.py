"""Photon statistics, quadrature variances, overlaps and the Wigner function.

Conventions: x = (a + a^dag)/sqrt 2 and p = (a - a^dag)/(i sqrt 2), so the
vacuum has Var x = Var p = 1/2.  The Q parameter is variance/mean (Poisson
gives 1, not 0).  The Wigner function is normalized to unit integral over the
complex z-plane with measure d(Re z) d(Im z); a coherent state |beta> peaks
at z = beta with height 2/pi.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .specfun import bessel_i_regularized, log_rising_products

__all__ = [
    "QuadratureReport",
    "WignerGrid",
    "photon_distribution",
    "q_parameter",
    "quadrature_variances",
    "overlap",
    "algebraic_overlap_closed_form",
    "perelomov_overlap_closed_form",
    "wigner",
    "wigner_grid",
    "grid_axis",
    "wigner_series_printed",
    "wigner_printed_form_comparison",
]


@dataclass(frozen=True)
class QuadratureReport:
    var_x: float
    var_p: float

    @property
    def product(self) -> float:
        return self.var_x * self.var_p


def photon_distribution(state: np.ndarray) -> np.ndarray:
    return np.abs(np.asarray(state)) ** 2


def q_parameter(state: np.ndarray) -> float | None:
    """(<n^2> - <n>^2) / <n>; ``None`` when <n> = 0 (the ratio is undefined)."""
    p = photon_distribution(state)
    n = np.arange(p.size)
    mean = float(np.dot(n, p))
    if mean == 0.0:
        return None
    var = float(np.dot((n - mean) ** 2, p))
    return var / mean


def quadrature_variances(state: np.ndarray) -> QuadratureReport:
    """Var x and Var p from operator expectations.

    The state is padded with one empty level so that a^dag acting on the top
    level is not cut off; the truncated vector is then treated exactly.
    """
    c = np.concatenate((np.asarray(state, dtype=complex), [0.0]))
    sq = np.sqrt(np.arange(1, c.size))
    a_c = np.concatenate((sq * c[1:], [0.0]))  # a|psi>
    adag_c = np.concatenate(([0.0], sq * c[:-1]))  # a^dag |psi>
    xv = (a_c + adag_c) / math.sqrt(2.0)
    pv = (a_c - adag_c) / (1j * math.sqrt(2.0))
    mx = np.vdot(c, xv).real
    mp = np.vdot(c, pv).real
    return QuadratureReport(
        var_x=float(np.vdot(xv, xv).real - mx * mx),
        var_p=float(np.vdot(pv, pv).real - mp * mp),
    )


def overlap(a: np.ndarray, b: np.ndarray) -> complex:
    """<a|b>."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def algebraic_overlap_closed_form(alpha: complex, beta: complex, k: float) -> complex:
    """<alpha,k|beta,k> from the Bessel expression.

    (alpha* beta)^(-nu/2) I_nu(2 sqrt(alpha* beta / k))
      / sqrt(|alpha beta|^(-nu) I_nu(2|alpha|/sqrt k) I_nu(2|beta|/sqrt k)),
    nu = 1/k - 1.  The numerator is evaluated through the entire function
    I_nu(2 sqrt u) / u^(nu/2), which fixes the branch for complex arguments.
    """
    alpha = complex(alpha)
    beta = complex(beta)
    if k == 0.0:
        return cmath.exp(alpha.conjugate() * beta - 0.5 * abs(alpha) ** 2 - 0.5 * abs(beta) ** 2)
    nu = 1.0 / k - 1.0
    # I_nu(2 sqrt u) / u^{nu/2} with u = w/k contributes a common k^{-nu/2}
    num = bessel_i_regularized(nu, alpha.conjugate() * beta / k)

    def modulus_part(r: float) -> float:
        # I_nu(2y) y^(-nu), y = r / sqrt(k), without the 0 * inf of tiny r
        return bessel_i_regularized(nu, r * r / k).real

    return num / math.sqrt(modulus_part(abs(alpha)) * modulus_part(abs(beta)))


def perelomov_overlap_closed_form(beta: complex, beta_prime: complex, k: float) -> complex:
    """_p<beta,k|beta',k>_p = [(1-k|b|^2)(1-k|b'|^2)]^(1/2k) (1 - k b* b')^(-1/k)."""
    beta = complex(beta)
    beta_prime = complex(beta_prime)
    w = beta.conjugate() * beta_prime

    def log1m_over_k(u: complex) -> complex:
        # ln(1 - k u) / k, -> -u as k -> 0
        if abs(k * u) < 1e-8:
            return -u * (1.0 + 0.5 * k * u)
        return cmath.log(1.0 - k * u) / k

    expo = 0.5 * (log1m_over_k(abs(beta) ** 2) + log1m_over_k(abs(beta_prime) ** 2)) - log1m_over_k(w)
    return cmath.exp(expo)


def wigner(state: np.ndarray, z) -> np.ndarray | float:
    """W(z) = (2/pi) <psi| D(z) P D(z)^dag |psi>, P the photon-number parity.

    With D(z) P D(z)^dag = D(2z) P, W = (2/pi) sum_{m,n} c_m* (-1)^n c_n <m|D(xi)|n>,
    xi = 2z.  Only the lower triangle m = n + a is built; the upper one is its
    conjugate mirror, <n|D|n+a> = (-1)^a conj(<n+a|D|n>), so its sum is the
    conjugate of the lower sum.  Along each offset a the elements
    h_n = <n+a|D(xi)|n> are normalized Laguerre functions, generated forward in
    the degree n (the stable direction) with x = |xi|^2:

        h_0     = xi^a exp(-x/2) / sqrt(a!)
        h_1     = h_0 (1 + a - x) / sqrt(1 + a)
        h_{n+1} = ((2n + 1 + a - x) h_n - sqrt(n (n + a)) h_{n-1}) / sqrt((n + 1)(n + 1 + a))
    """
    c = np.asarray(state, dtype=complex)
    zz = np.asarray(z, dtype=complex)
    scalar = zz.ndim == 0
    xi = 2.0 * zz.reshape(-1)
    x = np.abs(xi) ** 2
    dim = c.size
    h = np.empty((dim, xi.size), dtype=complex)
    h[0] = np.exp(-0.5 * x)
    for a in range(1, dim):
        h[a] = h[a - 1] * xi / math.sqrt(a)
    off = np.arange(dim, dtype=float)[:, None]
    # diagonal once, each off-diagonal pair through 2 Re
    weight = np.full(dim, 2.0)
    weight[0] = 1.0
    acc = np.zeros(xi.size, dtype=complex)
    prev = h
    for n in range(dim):
        width = dim - n
        if c[n] != 0.0:
            sign = -1.0 if n % 2 else 1.0
            acc += (sign * c[n] * weight[:width] * c[n:].conj()) @ h
        if n + 1 < dim:
            a = off[: width - 1]
            if n == 0:
                nxt = h[: width - 1] * (1.0 + a - x) / np.sqrt(1.0 + a)
            else:
                nxt = ((2 * n + 1 + a - x) * h[: width - 1] - np.sqrt(n * (n + a)) * prev[: width - 1]) / np.sqrt(
                    (n + 1) * (n + 1 + a)
                )
            prev, h = h, nxt
    w = (2.0 / math.pi) * acc.real
    return float(w[0]) if scalar else w.reshape(zz.shape)


def grid_axis(lo: float, hi: float, step: float) -> np.ndarray:
    """Uniform axis lo, lo+step, ..., hi built from integer multiples of ``step``."""
    if step <= 0:
        raise ValueError("step must be positive")
    i0 = int(round(lo / step))
    i1 = int(round(hi / step))
    if i1 < i0:
        raise ValueError("empty grid")
    return np.arange(i0, i1 + 1) * step


@dataclass(frozen=True)
class WignerGrid:
    re: np.ndarray
    im: np.ndarray
    values: np.ndarray  # shape (len(im), len(re))
    step: float

    def integral(self) -> float:
        return float(self.values.sum() * self.step * self.step)

    def minimum(self) -> float:
        return float(self.values.min())


def wigner_grid(
    state: np.ndarray,
    re_range: tuple[float, float] = (-6.0, 6.0),
    im_range: tuple[float, float] = (-6.0, 6.0),
    step: float = 0.05,
) -> WignerGrid:
    re = grid_axis(*re_range, step)
    im = grid_axis(*im_range, step)
    Z = re[None, :] + 1j * im[:, None]
    return WignerGrid(re=re, im=im, values=wigner(state, Z), step=float(step))


def wigner_series_printed(alpha: complex, k: float, z, nmax: int = 40) -> np.ndarray:
    """The double-sum Wigner expression for |alpha,k> as printed, term for term.

    (2 e^{-|z|^2} / pi) N_k^2 sum_{n,m} alpha^n alpha*^m / sqrt(R_n R_m)
        sum_l (-1)^l 2^(n+m-2l) z^(n-l) z*^(m-l) / (l! (n-l)! (m-l)!)

    with k^n (1/k)_n = R_n.  Only usable for small |z| and ``nmax``: the inner
    sum alternates with large terms.
    """
    alpha = complex(alpha)
    zz = np.asarray(z, dtype=complex)
    logR = log_rising_products(k, nmax)
    n = np.arange(nmax)
    coef = alpha**n / np.exp(0.5 * logR)
    norm_inv = float(np.sum(np.abs(alpha) ** (2 * n) / np.exp(logR + _log_fact(nmax))))
    fact = np.exp(_log_fact(nmax))
    zc = zz.conj()
    total = np.zeros(zz.shape, dtype=complex)
    for a in range(nmax):
        for b in range(nmax):
            inner = np.zeros(zz.shape, dtype=complex)
            for l in range(min(a, b) + 1):
                inner += ((-1) ** l * 2.0 ** (a + b - 2 * l) / (fact[l] * fact[a - l] * fact[b - l])) * zz ** (a - l) * zc ** (b - l)
            total += coef[a] * coef[b].conjugate() * inner
    return (2.0 / math.pi) * np.exp(-np.abs(zz) ** 2) * total.real / norm_inv


def _log_fact(nmax: int) -> np.ndarray:
    return np.concatenate(([0.0], np.cumsum(np.log(np.arange(1, nmax)))))[:nmax]


def wigner_printed_form_comparison(alpha: complex, k: float, z, state: np.ndarray, nmax: int = 40) -> dict:
    """Compare the printed double sum with :func:`wigner` on sample points.

    The printed sum equals exp(|z|^2) W(conj z): the Gaussian prefactor carries
    exp(-|z|^2) where exp(-2|z|^2) belongs, and z pairs with alpha^n instead of
    z*.  After removing exp(|z|^2) a least-squares constant is fitted; it comes
    out as 1 when the rest of the expression is right.
    """
    zz = np.asarray(z, dtype=complex).reshape(-1)
    printed = wigner_series_printed(alpha, k, zz, nmax)
    reference = wigner(state, zz.conj())
    corrected = printed * np.exp(-np.abs(zz) ** 2)
    const = float(np.dot(corrected, reference) / np.dot(reference, reference))
    raw_ratio = printed / reference
    return {
        "fitted_constant": const,
        "residual": float(np.max(np.abs(corrected - const * reference))),
        "raw_ratio_min": float(raw_ratio.min()),
        "raw_ratio_max": float(raw_ratio.max()),
    }
