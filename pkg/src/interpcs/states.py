"""Number-state expansions of the coherent-state families.

Families
--------
``algebraic``  eigenstates of A- : c_n ~ alpha^n / sqrt(n! R_n)
``perelomov``  exp(alpha A+ - alpha* A-)|0> : c_n ~ beta^n sqrt(R_n / n!)
``bminus``     eigenstates of B- : c_n ~ alpha^n sqrt(R_n / n!), k|alpha|^2 < 1
``coherent``   ordinary Glauber states
``phase``      geometric profile sqrt(1 - |alpha|^2) alpha^n (bminus at k = 1)

Here R_n = prod_{j<n} (1 + j k) (see :func:`interpcs.specfun.rising_product`).
All amplitudes are (positive real) * alpha^n, so photon-number distributions
depend on |alpha| only.

Constructors take ``dim=None`` to pick the smallest truncation (at least
``DEFAULT_DIM``) whose dropped tail probability is below ``TAIL_TOL``; an
explicit ``dim`` that drops more than that raises :class:`TruncationError`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import fock
from .specfun import bessel_i, log_gamma, log_rising_products

__all__ = [
    "DEFAULT_DIM",
    "MAX_DIM",
    "TAIL_TOL",
    "FAMILIES",
    "TruncationError",
    "StateLabel",
    "DisentangledParams",
    "algebraic_cs",
    "algebraic_norm_sq_inverse",
    "log_algebraic_norm_sq_inverse",
    "algebraic_norm_closed_form",
    "beta_of_alpha",
    "alpha_of_beta",
    "disentangled_params",
    "perelomov_cs",
    "perelomov_cs_from_beta",
    "bminus_eigenstate",
    "coherent_state",
    "phase_state",
    "make_state",
    "nonunitary_deformation_check",
    "tail_probability",
]

DEFAULT_DIM = 60
MAX_DIM = 512
TAIL_TOL = 1e-12

FAMILIES = ("algebraic", "perelomov", "bminus", "coherent", "phase")


class TruncationError(ValueError):
    """The requested truncation drops more probability than ``TAIL_TOL``."""


@dataclass(frozen=True)
class StateLabel:
    family: str
    alpha: complex
    k: float

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if not 0.0 <= self.k <= 1.0:
            raise ValueError(f"k must lie in [0, 1], got {self.k!r}")
        if self.family == "bminus" and self.k * abs(self.alpha) ** 2 >= 1.0:
            raise ValueError("bminus states need k |alpha|^2 < 1")
        if self.family == "phase" and abs(self.alpha) >= 1.0:
            raise ValueError("phase states need |alpha| < 1")


@dataclass(frozen=True)
class DisentangledParams:
    """exp(alpha A+ - alpha* A-) = exp(beta A+) exp(gamma A0) exp(delta A-)."""

    beta: complex
    gamma: float
    delta: complex


def _check_k(k: float) -> float:
    k = float(k)
    if not 0.0 <= k <= 1.0:
        raise ValueError(f"k must lie in [0, 1], got {k!r}")
    return k


def _log_factorials(nmax: int) -> np.ndarray:
    return np.concatenate(([0.0], np.cumsum(np.log(np.arange(1, nmax)))))[:nmax]


def _log_cosh(x: float) -> float:
    if x < 1.0:
        # cosh x - 1 = 2 sinh^2(x/2) keeps full relative accuracy near 0
        return math.log1p(2.0 * math.sinh(0.5 * x) ** 2)
    return x + math.log1p(math.exp(-2.0 * x)) - math.log(2.0)


def _log_cosh_over_k(lam: float, k: float) -> float:
    """ln cosh(lam sqrt k) / k with the k -> 0 limit lam^2 / 2."""
    x = lam * math.sqrt(k)
    if x < 1e-4:
        x2 = x * x
        return lam * lam * (0.5 - x2 / 12.0 + x2 * x2 / 45.0)
    return _log_cosh(x) / k


def _phases(alpha: complex, n: np.ndarray) -> np.ndarray:
    if alpha.imag == 0.0:
        # exact signs for real arguments
        return np.where((n % 2 == 1) & (alpha.real < 0), -1.0, 1.0).astype(complex)
    return np.exp(1j * cmath.phase(alpha) * n)


def _assemble(logmag: np.ndarray, alpha: complex, dim: int) -> np.ndarray:
    n = np.arange(dim)
    return np.exp(logmag[:dim]) * _phases(alpha, n)


def _pick_dim(tails: np.ndarray, dim: int | None) -> int:
    """tails[D] = probability in levels >= D."""
    if dim is None:
        ok = np.nonzero(tails <= TAIL_TOL)[0]
        ok = ok[ok >= 2]
        if ok.size == 0 or ok[0] > MAX_DIM:
            raise TruncationError(f"tail probability stays above {TAIL_TOL} up to dim={MAX_DIM}")
        return max(DEFAULT_DIM, int(ok[0]))
    dim = int(dim)
    if dim < 1:
        raise ValueError("dim must be positive")
    tail = tails[dim] if dim < tails.size else 0.0
    if tail > TAIL_TOL:
        raise TruncationError(f"dim={dim} drops tail probability {tail:.3e} > {TAIL_TOL}")
    return dim


def _tails_from_logp(logp: np.ndarray) -> np.ndarray:
    p = np.exp(logp)
    # tails[D] = sum_{n >= D} p_n, summed from the small end
    rev = np.cumsum(p[::-1])[::-1]
    return np.concatenate((rev, [0.0]))


def _logsumexp(v: np.ndarray) -> float:
    m = float(v.max())
    return m + math.log(float(np.exp(v - m).sum()))


# --- algebraic family --------------------------------------------------------


def _algebraic_log_terms(r: float, k: float, nmax: int) -> np.ndarray:
    """ln of r^n / sqrt(n! R_n), the unnormalized amplitude magnitudes."""
    n = np.arange(nmax)
    return n * math.log(r) - 0.5 * (_log_factorials(nmax) + log_rising_products(k, nmax))


def _algebraic_series(r: float, k: float, min_terms: int) -> np.ndarray:
    # grow until the squared terms have died far below the peak
    nmax = max(min_terms, 64)
    while True:
        lt = _algebraic_log_terms(r, k, nmax)
        peak = int(np.argmax(lt))
        if peak < nmax - 10 and 2 * (lt[-1] - lt[peak]) < -90.0:
            return lt
        nmax *= 2


def log_algebraic_norm_sq_inverse(alpha: complex, k: float) -> float:
    """ln(1/N_k^2) with 1/N_k^2 = sum_n |alpha|^(2n) / (n! R_n), summed directly."""
    k = _check_k(k)
    r = abs(alpha)
    if r == 0.0:
        return 0.0
    return _logsumexp(2.0 * _algebraic_series(r, k, 0))


def algebraic_norm_sq_inverse(alpha: complex, k: float) -> float:
    return math.exp(log_algebraic_norm_sq_inverse(alpha, k))


def algebraic_norm_closed_form(alpha: complex, k: float) -> float:
    """Bessel closed form of 1/N_k^2, kept as a cross-check on the series.

    1/N_k^2 = Gamma(1/k) (|alpha|/sqrt k)^(1 - 1/k) I_{1/k - 1}(2|alpha|/sqrt k);
    at k = 1 this is I_0(2|alpha|), at k = 0 it is exp(|alpha|^2).
    """
    k = _check_k(k)
    r = abs(alpha)
    if k == 0.0:
        return math.exp(r * r)
    if r == 0.0:
        return 1.0
    nu = 1.0 / k - 1.0
    y = r / math.sqrt(k)
    return math.exp(log_gamma(1.0 / k) - nu * math.log(y)) * bessel_i(nu, 2.0 * y)


def algebraic_cs(alpha: complex, k: float, dim: int | None = None, *, check_tail: bool = True) -> np.ndarray:
    """Normalized eigenstate of A- with eigenvalue ``alpha``.

    The normalization is the full (converged) series sum, so with
    ``check_tail=False`` the result is the exact state projected onto ``dim``
    levels rather than a renormalized truncation.
    """
    k = _check_k(k)
    alpha = complex(alpha)
    r = abs(alpha)
    if r == 0.0:
        return fock.basis(0, DEFAULT_DIM if dim is None else int(dim))
    lt = _algebraic_series(r, k, (dim or 0) + 1)
    logp = 2.0 * lt
    lognorm = _logsumexp(logp)
    logp -= lognorm
    if check_tail:
        dim = _pick_dim(_tails_from_logp(logp), dim)
    elif dim is None:
        dim = DEFAULT_DIM
    if dim > lt.size:
        lt = _algebraic_log_terms(r, k, dim)
    return _assemble(lt - 0.5 * lognorm, alpha, dim)


# --- disentangled parameters -------------------------------------------------


def beta_of_alpha(alpha: complex, k: float) -> complex:
    """beta = e^{i theta} tanh(|alpha| sqrt k) / sqrt k, with beta -> alpha as k -> 0."""
    k = _check_k(k)
    alpha = complex(alpha)
    x = abs(alpha) * math.sqrt(k)
    if x < 1e-4:
        x2 = x * x
        ratio = 1.0 - x2 / 3.0 + 2.0 * x2 * x2 / 15.0
    else:
        ratio = math.tanh(x) / x
    return alpha * ratio


def alpha_of_beta(beta: complex, k: float) -> complex:
    """Inverse of :func:`beta_of_alpha`; needs k |beta|^2 < 1."""
    k = _check_k(k)
    beta = complex(beta)
    y = abs(beta) * math.sqrt(k)
    if y >= 1.0:
        raise ValueError("k |beta|^2 must be below 1")
    if y < 1e-4:
        y2 = y * y
        ratio = 1.0 + y2 / 3.0 + y2 * y2 / 5.0
    else:
        ratio = math.atanh(y) / y
    return beta * ratio


def disentangled_params(alpha: complex, k: float) -> DisentangledParams:
    k = _check_k(k)
    beta = beta_of_alpha(alpha, k)
    gamma = -2.0 * _log_cosh_over_k(abs(alpha), k)
    return DisentangledParams(beta=beta, gamma=gamma, delta=-beta.conjugate())


# --- perelomov / bminus families --------------------------------------------


def _geometric_log_terms(r: float, k: float, nmax: int) -> np.ndarray:
    """ln of r^n sqrt(R_n / n!)."""
    n = np.arange(nmax)
    with np.errstate(divide="ignore"):
        logr = math.log(r) if r > 0 else -np.inf
    out = 0.5 * (log_rising_products(k, nmax) - _log_factorials(nmax))
    out[1:] += n[1:] * logr
    return out


def _geometric_state(
    ampl: complex, lognorm: float, k: float, dim: int | None, check_tail: bool
) -> np.ndarray:
    r = abs(ampl)
    if r == 0.0:
        return fock.basis(0, DEFAULT_DIM if dim is None else int(dim))
    if check_tail:
        cap = MAX_DIM + 1 if dim is None else int(dim) + 1
        logp = 2.0 * (_geometric_log_terms(r, k, cap) + lognorm)
        covered = np.concatenate(([0.0], np.cumsum(np.exp(logp))))
        tails = np.maximum(1.0 - covered, 0.0)
        dim = _pick_dim(tails, dim)
    elif dim is None:
        dim = DEFAULT_DIM
    return _assemble(_geometric_log_terms(r, k, dim) + lognorm, complex(ampl), dim)


def perelomov_cs(alpha: complex, k: float, dim: int | None = None, *, check_tail: bool = True) -> np.ndarray:
    """Group-theoretic state exp(alpha A+ - alpha* A-)|0> from its disentangled form.

    c_n = (1 - k|beta|^2)^(1/2k) beta^n sqrt(R_n / n!), with
    (1 - k|beta|^2)^(1/2k) = cosh(|alpha| sqrt k)^(-1/k).
    """
    k = _check_k(k)
    alpha = complex(alpha)
    beta = beta_of_alpha(alpha, k)
    lognorm = -_log_cosh_over_k(abs(alpha), k)
    return _geometric_state(beta, lognorm, k, dim, check_tail)


def perelomov_cs_from_beta(beta: complex, k: float, dim: int | None = None, *, check_tail: bool = True) -> np.ndarray:
    """Perelomov state labelled by the disk coordinate beta (k |beta|^2 < 1)."""
    return perelomov_cs(alpha_of_beta(beta, k), k, dim, check_tail=check_tail)


def _log1m_over_2k(a2: float, k: float) -> float:
    """ln(1 - k a2) / (2k), with the k -> 0 limit -a2/2."""
    x = k * a2
    if x < 1e-8:
        return -0.5 * a2 * (1.0 + 0.5 * x)
    return math.log1p(-x) / (2.0 * k)


def bminus_eigenstate(alpha: complex, k: float, dim: int | None = None, *, check_tail: bool = True) -> np.ndarray:
    """Normalized eigenstate of B- = (1 + k n)^(-1/2) a; needs k|alpha|^2 < 1."""
    k = _check_k(k)
    alpha = complex(alpha)
    a2 = abs(alpha) ** 2
    if k * a2 >= 1.0:
        raise ValueError(f"bminus state not normalizable: k|alpha|^2 = {k * a2:.6g} >= 1")
    return _geometric_state(alpha, _log1m_over_2k(a2, k), k, dim, check_tail)


def coherent_state(alpha: complex, dim: int | None = None, *, check_tail: bool = True) -> np.ndarray:
    """Glauber state exp(-|alpha|^2/2) sum alpha^n / sqrt(n!) |n>."""
    alpha = complex(alpha)
    r = abs(alpha)
    if r == 0.0:
        return fock.basis(0, DEFAULT_DIM if dim is None else int(dim))
    lognorm = -0.5 * r * r
    if check_tail:
        cap = MAX_DIM + 1
        n = np.arange(cap)
        logp = 2.0 * (n * math.log(r) - 0.5 * _log_factorials(cap) + lognorm)
        dim = _pick_dim(_tails_from_logp(logp), dim)
    elif dim is None:
        dim = DEFAULT_DIM
    n = np.arange(dim)
    return _assemble(n * math.log(r) - 0.5 * _log_factorials(dim) + lognorm, alpha, dim)


def phase_state(alpha: complex, dim: int | None = None, *, check_tail: bool = True) -> np.ndarray:
    """sqrt(1 - |alpha|^2) sum alpha^n |n>, |alpha| < 1."""
    return bminus_eigenstate(alpha, 1.0, dim, check_tail=check_tail)


def make_state(label: StateLabel, dim: int | None = None) -> np.ndarray:
    if label.family == "algebraic":
        return algebraic_cs(label.alpha, label.k, dim)
    if label.family == "perelomov":
        return perelomov_cs(label.alpha, label.k, dim)
    if label.family == "bminus":
        return bminus_eigenstate(label.alpha, label.k, dim)
    if label.family == "coherent":
        return coherent_state(label.alpha, dim)
    return phase_state(label.alpha, dim)


def tail_probability(state: np.ndarray) -> float:
    """Probability missing from a truncated normalized state (0 if renormalized)."""
    return max(0.0, 1.0 - float(np.vdot(state, state).real))


def nonunitary_deformation_check(alpha: complex, k: float, dim: int | None = None) -> float:
    """Distance between normalize(exp(alpha B+)|0>) and the A- eigenstate."""
    target = algebraic_cs(alpha, k, dim)
    ctx = fock.make_context(k, target.size)
    v = fock.matrix_exp(complex(alpha) * ctx.Bp)[:, 0]
    v = v / np.linalg.norm(v)
    return float(np.linalg.norm(v - target))
