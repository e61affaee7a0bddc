import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from scipy import special
from scipy.linalg import expm

from interpcs import fock, observables, states

mpmath.mp.dps = 30


def _mp_q(r, k):
    # Q from 30-digit series moments of p_n ~ r^(2n) / (n! R_n)
    s0 = s1 = s2 = mpmath.mpf(0)
    term = mpmath.mpf(1)
    n = 0
    while term > mpmath.mpf(10) ** -40 or n < 10:
        s0 += term
        s1 += n * term
        s2 += n * n * term
        n += 1
        term = term * mpmath.mpf(r) ** 2 / (n * (1 + (n - 1) * mpmath.mpf(k)))
    mean = s1 / s0
    return float((s2 / s0 - mean**2) / mean)


def _wigner_oracle(psi, z, pad=60):
    # (2/pi) <psi| D(z) P D(z)^dag |psi> with dense expm on an enlarged space
    D = psi.size + pad
    a = fock.annihilation(D)
    disp = expm(z * a.conj().T - np.conj(z) * a)
    parity = np.diag((-1.0) ** np.arange(D))
    v = np.zeros(D, dtype=complex)
    v[: psi.size] = psi
    w = disp.conj().T @ v
    return 2 / math.pi * np.vdot(w, parity @ w).real


def test_photon_distribution():
    np.testing.assert_array_equal(observables.photon_distribution(fock.basis(0, 5)), [1, 0, 0, 0, 0])
    p = observables.photon_distribution(states.coherent_state(1.0))
    n = np.arange(p.size)
    poisson = np.exp(-1.0) / special.factorial(n)
    np.testing.assert_allclose(p, poisson, rtol=1e-12)
    p1 = observables.photon_distribution(states.algebraic_cs(1.0, 1.0))
    shape = 1.0 / special.factorial(n[:20]) ** 2
    np.testing.assert_allclose(p1[:20] / p1[0], shape, rtol=1e-12)
    assert p1.sum() == pytest.approx(1.0, abs=1e-12)


def test_q_parameter_examples():
    assert observables.q_parameter(states.coherent_state(1.5)) == pytest.approx(1.0, abs=1e-10)
    assert observables.q_parameter(fock.basis(4, 10)) == 0.0
    assert observables.q_parameter(fock.basis(0, 10)) is None
    q = observables.q_parameter(states.algebraic_cs(2.0, 1.0))
    assert q < 1.0
    assert q == pytest.approx(_mp_q(2.0, 1.0), rel=1e-11)


@pytest.mark.parametrize("k", [0.25, 0.5, 0.75, 1.0])
@pytest.mark.parametrize("r", [0.05, 0.5, 1.25, 2.0, 2.5])
def test_poisson_split(k, r):
    qa = observables.q_parameter(states.algebraic_cs(r, k))
    assert qa < 1.0
    assert qa == pytest.approx(_mp_q(r, k), rel=1e-10)
    # Perelomov states at |alpha| = 2.5, k >= 0.75 need more than MAX_DIM levels
    if r <= 2.0:
        assert observables.q_parameter(states.perelomov_cs(r, k)) > 1.0


def test_perelomov_q_closed_form():
    # negative-binomial statistics: Q = 1 + k |beta|^2 / (1 - k |beta|^2)
    for k in (0.25, 1.0):
        b = abs(states.beta_of_alpha(1.4, k))
        # a 1e-12 tail near n = 60 still moves <n^2> by ~1e-9, so truncate far out
        q = observables.q_parameter(states.perelomov_cs(1.4, k, 400))
        assert q == pytest.approx(1 + k * b * b / (1 - k * b * b), rel=1e-11)


def test_variances_examples():
    v = observables.quadrature_variances(fock.basis(0, 10))
    assert (v.var_x, v.var_p) == pytest.approx((0.5, 0.5), abs=1e-15)
    c = observables.quadrature_variances(states.coherent_state(1.3 - 2.0j))
    assert (c.var_x, c.var_p) == pytest.approx((0.5, 0.5), abs=1e-10)
    sq = observables.quadrature_variances(states.algebraic_cs(2.5, 0.5))
    assert sq.var_x < 0.5
    assert sq.product >= 0.25 - 1e-10


def test_variances_against_dense_operators():
    psi = states.algebraic_cs(1.1 + 0.7j, 0.75)
    D = psi.size + 1
    c = fock.make_context(0.75, D)
    v = np.concatenate((psi, [0]))
    ex = lambda op: fock.expectation(v, op).real
    got = observables.quadrature_variances(psi)
    assert got.var_x == pytest.approx(ex(c.x @ c.x) - ex(c.x) ** 2, abs=1e-13)
    assert got.var_p == pytest.approx(ex(c.p @ c.p) - ex(c.p) ** 2, abs=1e-13)


@given(arrays(np.float64, st.integers(2, 25), elements=st.floats(-1.0, 1.0)), st.complex_numbers(min_magnitude=0.1, max_magnitude=2.0))
def test_symmetries_for_real_coefficient_states(S, alpha):
    # any state alpha^n S_n with real S_n
    if np.linalg.norm(S) < 1e-3:
        return
    n = np.arange(S.size)

    def make(a):
        v = a**n * S
        return v / np.linalg.norm(v)

    base = observables.quadrature_variances(make(alpha))
    neg = observables.quadrature_variances(make(-alpha))
    rot = observables.quadrature_variances(make(1j * alpha))
    assert abs(neg.var_x - base.var_x) <= 1e-12 * max(1, base.var_x)
    assert abs(neg.var_p - base.var_p) <= 1e-12 * max(1, base.var_p)
    assert abs(rot.var_x - base.var_p) <= 1e-12 * max(1, base.var_p)
    assert base.product >= 0.25 - 1e-10


@given(st.sampled_from(["algebraic", "perelomov"]), st.floats(0.0, 1.0), st.complex_numbers(max_magnitude=2.0))
def test_heisenberg_bound(family, k, alpha):
    psi = states.make_state(states.StateLabel(family, alpha, k))
    assert observables.quadrature_variances(psi).product >= 0.25 - 1e-10


def test_overlaps():
    psi = states.algebraic_cs(0.8 + 0.1j, 0.5)
    assert observables.overlap(psi, psi) == pytest.approx(1.0, abs=1e-13)
    with pytest.raises(ValueError):
        observables.overlap(psi, psi[:-1])
    assert observables.perelomov_overlap_closed_form(0.4 + 0.3j, 0.4 + 0.3j, 0.75) == pytest.approx(1.0, abs=1e-15)
    a = states.algebraic_cs(1.0, 1.0, 80)
    b = states.algebraic_cs(2.0, 1.0, 80)
    closed = observables.algebraic_overlap_closed_form(1.0, 2.0, 1.0)
    assert observables.overlap(a, b) == pytest.approx(closed, abs=1e-9)
    i0 = special.iv(0, 2 * math.sqrt(2.0)) / math.sqrt(special.iv(0, 2.0) * special.iv(0, 4.0))
    assert closed.real == pytest.approx(i0, rel=1e-12)


@given(
    st.complex_numbers(max_magnitude=2.5),
    st.complex_numbers(max_magnitude=2.5),
    st.sampled_from([0.0, 0.25, 0.5, 0.75, 1.0]),
)
def test_algebraic_overlap_closed_form(alpha, beta, k):
    a = states.algebraic_cs(alpha, k, 90)
    b = states.algebraic_cs(beta, k, 90)
    assert abs(observables.overlap(a, b) - observables.algebraic_overlap_closed_form(alpha, beta, k)) <= 1e-10


@given(st.complex_numbers(max_magnitude=0.9), st.complex_numbers(max_magnitude=0.9), st.sampled_from([0.25, 0.5, 1.0]))
def test_perelomov_overlap_closed_form(b1, b2, k):
    s1 = states.perelomov_cs_from_beta(b1, k, 400)
    s2 = states.perelomov_cs_from_beta(b2, k, 400)
    assert abs(observables.overlap(s1, s2) - observables.perelomov_overlap_closed_form(b1, b2, k)) <= 1e-10


def test_wigner_point_values():
    assert observables.wigner(fock.basis(0, 10), 0.0) == pytest.approx(2 / math.pi, abs=1e-10)
    assert observables.wigner(fock.basis(1, 10), 0.0) == pytest.approx(-2 / math.pi, abs=1e-10)
    coh = states.coherent_state(1.0 - 0.5j)
    assert observables.wigner(coh, 1.0 - 0.5j) == pytest.approx(2 / math.pi, abs=1e-10)


@pytest.mark.parametrize("m", [0, 1, 3, 7])
def test_wigner_fock_laguerre(m):
    z = np.array([0.0, 0.3 + 0.2j, -1.1j, 1.7])
    got = observables.wigner(fock.basis(m, 20), z)
    x = 4 * np.abs(z) ** 2
    ref = 2 / math.pi * (-1) ** m * np.exp(-x / 2) * special.eval_laguerre(m, x)
    np.testing.assert_allclose(got, ref, atol=1e-13)


@pytest.mark.parametrize(
    "psi",
    [
        states.algebraic_cs(2.5, 0.5),
        states.perelomov_cs(1.2 * cmath.exp(0.4j), 0.75),
        states.bminus_eigenstate(0.7j, 1.0, 90),
        states.perelomov_cs(2.0, 1.0),
    ],
)
def test_wigner_against_displaced_parity(psi):
    for z in (0.0, 0.4 - 0.9j, 1.5 + 0.2j, -2.0 + 1.0j, 3.0 + 1.0j, 6.0 - 2.0j):
        assert observables.wigner(psi, z) == pytest.approx(_wigner_oracle(psi, z, pad=200), abs=1e-13)


def test_wigner_against_extended_precision():
    # 40-digit sum over the Laguerre closed form of <m|D(xi)|n>
    mpmath.mp.dps = 40
    psi = states.perelomov_cs(1.2 * cmath.exp(0.4j), 0.75)
    z = -2.0 + 1.0j
    xi = 2 * mpmath.mpc(z)
    x = abs(xi) ** 2
    c = [mpmath.mpc(complex(v)) for v in psi]
    total = mpmath.mpc(0)
    for n in range(psi.size):
        for m in range(n, psi.size):
            d = mpmath.sqrt(mpmath.factorial(n) / mpmath.factorial(m)) * xi ** (m - n) * mpmath.laguerre(n, m - n, x)
            term = mpmath.conj(c[m]) * c[n] * (-1) ** n * d
            total += term if m == n else 2 * term.real
    ref = float(2 / mpmath.pi * mpmath.exp(-x / 2) * total.real)
    mpmath.mp.dps = 30
    assert observables.wigner(psi, z) == pytest.approx(ref, abs=1e-15)


def test_wigner_grid_summary():
    g = observables.wigner_grid(states.algebraic_cs(2.5, 0.5))
    assert g.values.shape == (241, 241)
    assert g.minimum() < 0.0
    assert abs(g.integral() - 1.0) <= 1e-6
    vac = observables.wigner_grid(fock.basis(0, 5), step=0.1)
    assert vac.minimum() > 0.0
    assert abs(vac.integral() - 1.0) <= 1e-6


def test_grid_axis():
    ax = observables.grid_axis(-1.0, 1.0, 0.05)
    assert ax.size == 41
    assert ax[20] == 0.0
    assert ax[-1] == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(ValueError):
        observables.grid_axis(0.0, 1.0, 0.0)


def test_printed_wigner_series_up_to_gaussian():
    z = np.array([0.3 + 0.2j, 0.8 - 0.5j, -0.4 + 0.6j, 1.0])
    psi = states.algebraic_cs(1.2, 0.5)
    cmp = observables.wigner_printed_form_comparison(1.2, 0.5, z, psi)
    assert cmp["fitted_constant"] == pytest.approx(1.0, abs=1e-9)
    assert cmp["residual"] <= 1e-10
    # the raw printed sum is not a constant multiple of W
    assert cmp["raw_ratio_max"] - cmp["raw_ratio_min"] > 0.1
