"""Resolution of identity for the algebraic and Perelomov families.

Algebraic family: (1/pi) int |alpha,k><alpha,k| rho(r) r dr dtheta / N_k^2(r) = I
with the radial weight

    rho(r) = 2 / (Gamma(1/k) k^((1/k+1)/2)) r^(1/k-1) K_{1/k-1}(2r/sqrt k),

whose radial moments are int rho r^(2n+1) dr = n! R_n / 2.

Perelomov family, in the disk coordinate beta (k|beta|^2 < 1):

    ((1-k)/pi) int |beta>_p <beta|_p d^2 beta / (1 - k|beta|^2)^2 = I,   0 < k < 1.

Both integrals are discretized as a radial rule times a uniform angular
trapezoid rule; a :class:`RadialMeasure` stores the resulting per-projector
weights so that sum_j w_j |psi_j><psi_j| approximates the identity with
*normalized* states |psi_j>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import integrate
from scipy.special import roots_jacobi

from . import states
from .specfun import log_bessel_k, log_gamma, log_rising_product, log_rising_products

__all__ = [
    "RadialMeasure",
    "MomentReport",
    "radial_weight_algebraic",
    "radial_weight_printed",
    "moment_target",
    "moment_check",
    "algebraic_measure",
    "perelomov_measure",
    "identity_resolution_algebraic",
    "identity_resolution_perelomov",
    "expand_state",
    "carleman_diagnostic",
]


@dataclass(frozen=True)
class MomentReport:
    n: int
    computed: float
    target: float

    @property
    def relative_error(self) -> float:
        return abs(self.computed - self.target) / self.target


@dataclass(frozen=True)
class RadialMeasure:
    """Product quadrature: radial nodes times ``n_angles`` equispaced angles.

    ``radii`` are |alpha| (algebraic) or |beta| (Perelomov); ``weights`` already
    contain the measure density, the angular step and the inverse squared
    normalization, so they multiply normalized projectors directly.
    """

    kind: str
    k: float
    radii: np.ndarray
    weights: np.ndarray
    n_angles: int
    domain: tuple[float, float]

    def angles(self) -> np.ndarray:
        return 2.0 * math.pi * np.arange(self.n_angles) / self.n_angles

    def state(self, radius: float, dim: int) -> np.ndarray:
        if self.kind == "algebraic_weight":
            return states.algebraic_cs(radius, self.k, dim, check_tail=False)
        return states.perelomov_cs_from_beta(radius, self.k, dim, check_tail=False)


def _check_k_open(k: float) -> float:
    k = float(k)
    if not 0.0 < k <= 1.0:
        raise ValueError(f"the radial weight needs 0 < k <= 1, got {k!r}")
    return k


def _log_rho(k: float, r) -> np.ndarray:
    nu = 1.0 / k - 1.0
    r = np.asarray(r, dtype=float)
    logc = math.log(2.0) - log_gamma(1.0 / k) - 0.5 * (1.0 / k + 1.0) * math.log(k)
    return logc + nu * np.log(r) + log_bessel_k(nu, 2.0 * r / math.sqrt(k))


def radial_weight_algebraic(k: float, r):
    """rho(r) for the algebraic family; at k = 1 this is 2 K_0(2r)."""
    k = _check_k_open(k)
    if np.any(np.asarray(r) <= 0):
        raise ValueError("r must be positive")
    out = np.exp(_log_rho(k, r))
    return float(out) if np.ndim(r) == 0 else out


def radial_weight_printed(k: float, r):
    """The weight in its printed form, 2/(k Gamma(1/k)) r^(1/k-1) K_{(1/k-1)/2}(2r/k).

    Diagnostic only: its moments miss the targets of :func:`moment_target`.
    """
    k = _check_k_open(k)
    out = np.exp(_log_rho_printed(k, r))
    return float(out) if np.ndim(r) == 0 else out


def _log_rho_printed(k: float, r) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    nu = 0.5 * (1.0 / k - 1.0)
    logc = math.log(2.0 / k) - log_gamma(1.0 / k)
    return logc + (1.0 / k - 1.0) * np.log(r) + log_bessel_k(nu, 2.0 * r / k)


def moment_target(k: float, n: int) -> float:
    """int_0^inf rho(r) r^(2n+1) dr required for the n-th diagonal element to be 1."""
    return math.exp(log_gamma(n + 1.0) + log_rising_product(k, n) - math.log(2.0))


def _radial_extent(logf, lo_guess: float = 1.0, drop: float = 40.0) -> tuple[float, float]:
    """(peak, cut) of a unimodal log-integrand; beyond ``cut`` it is < e^-drop of the peak."""
    grid = np.concatenate((np.geomspace(1e-6, lo_guess, 20), lo_guess + np.arange(1, 4000) * 0.25))
    vals = logf(grid)
    i = int(np.argmax(vals))
    peak = float(grid[i])
    below = np.nonzero(vals[i:] < vals[i] - drop)[0]
    if below.size == 0:
        raise ArithmeticError("radial integrand does not decay on the search grid")
    return peak, float(grid[i + below[0]])


def moment_check(k: float, n: int, *, printed_weight: bool = False, epsrel: float = 1e-13) -> MomentReport:
    """Radial moment of the weight by adaptive quadrature against n! R_n / 2."""
    k = _check_k_open(k)
    if printed_weight:
        logw = lambda r: _log_rho_printed(k, r)  # noqa: E731
    else:
        logw = lambda r: _log_rho(k, r)  # noqa: E731

    def logf(r):
        return logw(r) + (2 * n + 1) * np.log(r)

    peak, cut = _radial_extent(logf)
    scale = float(logf(peak))

    def f(r):
        return math.exp(float(logf(r)) - scale) if r > 0 else 0.0

    total = 0.0
    for a, b in ((0.0, peak), (peak, cut)):
        val, err = integrate.quad(f, a, b, epsabs=0.0, epsrel=epsrel, limit=400)
        if not err <= max(1e-10 * abs(val), 1e-300):
            raise ArithmeticError(f"quadrature did not converge on [{a}, {b}] (err {err:.2e})")
        total += val
    return MomentReport(n=n, computed=total * math.exp(scale), target=moment_target(k, n))


def _composite_gauss(edges: np.ndarray, order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = leggauss(order)
    a = edges[:-1, None]
    b = edges[1:, None]
    nodes = 0.5 * (b - a) * x[None, :] + 0.5 * (b + a)
    weights = 0.5 * (b - a) * w[None, :]
    return nodes.ravel(), weights.ravel()


def algebraic_measure(
    k: float,
    dim: int,
    *,
    n_angles: int | None = None,
    order: int = 20,
    tol: float = 1e-12,
    max_refine: int = 5,
) -> RadialMeasure:
    """Quadrature for the algebraic family covering levels 0 .. dim-1.

    Radial rule: composite Gauss-Legendre, geometrically graded toward r = 0
    (where rho has a logarithmic or r^(2 nu) log r piece) and uniform beyond.
    The panel width is halved until the rule reproduces every moment
    n! R_n / 2, n < dim, to relative ``tol``.
    """
    k = _check_k_open(k)
    top = dim - 1
    _, r_max = _radial_extent(lambda r: _log_rho(k, r) + (2 * top + 1) * np.log(r), drop=40.0)
    r_max = max(r_max, 2.0)
    targets = np.array([moment_target(k, n) for n in range(dim)])
    width = 1.0
    for _ in range(max_refine):
        graded = np.geomspace(2.0**-30, 1.0, 31)
        n_uniform = int(math.ceil((r_max - 1.0) / width))
        uniform = 1.0 + width * np.arange(1, n_uniform + 1)
        edges = np.concatenate(([0.0], graded, uniform))
        r, w = _composite_gauss(edges, order)
        logw = np.log(w) + _log_rho(k, r) + np.log(r)
        logr = np.log(r)
        moments = np.array([np.exp(logw + 2 * n * logr).sum() for n in range(dim)])
        err = np.max(np.abs(moments - targets) / targets)
        if err <= tol:
            break
        width *= 0.5
    else:
        raise ArithmeticError(f"radial rule did not reach tolerance {tol} (error {err:.2e})")
    n_angles = n_angles or 4 * dim
    lognorm_inv = np.array([states.log_algebraic_norm_sq_inverse(ri, k) for ri in r])
    # (1/pi) * (2 pi / M) * radial weight * 1/N_k^2
    weights = np.exp(logw + lognorm_inv) * (2.0 / n_angles)
    return RadialMeasure("algebraic_weight", k, r, weights, n_angles, (0.0, float(edges[-1])))


def perelomov_measure(
    k: float,
    dim: int,
    *,
    n_angles: int | None = None,
    n_radial: int | None = None,
    exponent: int = 2,
) -> RadialMeasure:
    """Disk quadrature for ((1-k)/pi) d^2 beta / (1 - k|beta|^2)^exponent.

    With u = k|beta|^2 the radial integrand becomes (1-u)^(1/k - exponent)
    times a polynomial in u (the state normalization supplies (1-u)^(1/k)),
    so Gauss-Jacobi in u is exact once ``n_radial`` >= dim.  ``exponent=1``
    is the printed denominator and only serves as a diagnostic.
    """
    k = float(k)
    if not 0.0 < k < 1.0:
        raise ValueError(
            "the disk measure needs 0 < k < 1: its prefactor (1-k) vanishes at k = 1, "
            "where the weight (1-u)^(1/k-2) is no longer integrable"
        )
    a = 1.0 / k - exponent
    if a <= -1.0:
        raise ValueError(f"(1-u)^{a} is not integrable")
    n_radial = n_radial or dim + 8
    x, wj = roots_jacobi(n_radial, a, 0.0)
    u = 0.5 * (x + 1.0)
    wu = wj * 0.5 ** (a + 1.0)  # weight (1-u)^a du on [0, 1]
    radii = np.sqrt(u / k)
    n_angles = n_angles or 4 * dim
    # ((1-k)/pi) * (2 pi / M) * (1/(2k)) du  and  1/norm^2 = (1-u)^(-1/k)
    weights = (1.0 - k) / k * wu / n_angles * np.exp(-np.log1p(-u) / k)
    return RadialMeasure("perelomov_disk", k, radii, weights, n_angles, (0.0, 1.0 / math.sqrt(k)))


def _angular_blocks(measure: RadialMeasure, dim: int):
    """Yield (weight, C) with rows of C the states at one radius, all angles."""
    phases = np.exp(1j * np.outer(measure.angles(), np.arange(dim)))
    for radius, w in zip(measure.radii, measure.weights):
        yield w, phases * measure.state(float(radius), dim)[None, :]


def _resolve(measure: RadialMeasure, dim: int) -> np.ndarray:
    out = np.zeros((dim, dim), dtype=complex)
    for w, C in _angular_blocks(measure, dim):
        out += w * (C.T @ C.conj())
    return out


def identity_resolution_algebraic(k: float, dim: int, **kwargs) -> np.ndarray:
    """(1/pi) int |alpha,k><alpha,k| dmu as a dim x dim matrix."""
    return _resolve(algebraic_measure(k, dim, **kwargs), dim)


def identity_resolution_perelomov(k: float, dim: int, **kwargs) -> np.ndarray:
    """((1-k)/pi) int |beta>_p<beta|_p d^2beta/(1-k|beta|^2)^2 as a dim x dim matrix."""
    return _resolve(perelomov_measure(k, dim, **kwargs), dim)


def expand_state(psi: np.ndarray, k: float, family: str, measure: RadialMeasure | None = None) -> np.ndarray:
    """Project ``psi`` on the coherent states and rebuild it from the projections.

    f = <alpha,k|psi> (or g = _p<alpha,k|psi>) is sampled on the quadrature
    nodes and |psi> = int dmu f |alpha,k> is evaluated with the same rule.
    """
    psi = np.asarray(psi, dtype=complex)
    dim = psi.size
    if measure is None:
        if family == "algebraic":
            measure = algebraic_measure(k, dim)
        elif family == "perelomov":
            measure = perelomov_measure(k, dim)
        else:
            raise ValueError(f"unknown family {family!r}")
    out = np.zeros(dim, dtype=complex)
    for w, C in _angular_blocks(measure, dim):
        f = C.conj() @ psi
        out += w * (f @ C)
    return out


def carleman_diagnostic(k: float, n_max: int) -> np.ndarray:
    """Partial sums of sum_{n>=1} mu_n^(-1/2n), mu_n the radial moment targets."""
    k = _check_k_open(k)
    n = np.arange(1, n_max + 1)
    lf = np.cumsum(np.log(n.astype(float)))
    logR = log_rising_products(k, n_max + 1)[1:]
    log_mu = lf + logR - math.log(2.0)
    return np.cumsum(np.exp(-log_mu / (2.0 * n)))
