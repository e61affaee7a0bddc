import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.linalg import expm

from interpcs import fock

K_GRID = [0.0, 0.25, 0.5, 0.75, 1.0]


def test_ladder_entries():
    D = 7
    a = fock.annihilation(D)
    ad = fock.creation(D)
    for n in range(D):
        for m in range(D):
            assert a[m, n] == (math.sqrt(n) if m == n - 1 else 0.0)
            assert ad[m, n] == (math.sqrt(n + 1) if m == n + 1 else 0.0)


def test_context_entries():
    c = fock.make_context(0.5, 10)
    assert c.Am[2, 3] == pytest.approx(math.sqrt(6.0), rel=1e-15)
    np.testing.assert_array_equal(np.diag(c.A0).real, 0.5 * np.arange(10) + 0.5)
    for n in range(1, 10):
        assert c.Bm[n - 1, n] == pytest.approx(math.sqrt(n / (1 + 0.5 * (n - 1))), rel=1e-15)
    assert np.array_equal(c.Ap, c.Am.conj().T)
    assert np.array_equal(c.Bp, c.Bm.conj().T)
    for op in (c.x, c.p, c.A0):
        assert np.array_equal(op, op.conj().T)


def test_k_limits():
    c0 = fock.make_context(0.0, 12)
    assert np.array_equal(c0.Am, fock.annihilation(12))
    assert np.array_equal(c0.Bm, fock.annihilation(12))
    c1 = fock.make_context(1.0, 12)
    out = c1.Am @ fock.basis(2, 12)
    np.testing.assert_allclose(out, 2.0 * fock.basis(1, 12), atol=1e-15)


def test_context_is_read_only():
    c = fock.make_context(0.3, 5)
    with pytest.raises(ValueError):
        c.Am[0, 1] = 3.0


@pytest.mark.parametrize("k,dim", [(-0.1, 10), (1.1, 10), (0.5, 1), (0.5, 2.5)])
def test_context_rejects(k, dim):
    with pytest.raises(ValueError):
        fock.make_context(k, dim)


@pytest.mark.parametrize("k", K_GRID)
def test_commutators_on_interior(k):
    c = fock.make_context(k, 60)
    I1 = fock.interior(fock.commutator(c.a, c.adag), 1)
    np.testing.assert_allclose(I1, np.eye(59), atol=1e-12)
    r = fock.interior(fock.commutator(c.Ap, c.Am) + 2 * c.A0, 2)
    assert np.max(np.abs(r)) <= 1e-10
    r = fock.interior(fock.commutator(c.A0, c.Ap) - k * c.Ap, 1)
    assert np.max(np.abs(r)) <= 1e-10
    r = fock.interior(fock.commutator(c.Bm, c.Ap) - c.identity, 1)
    assert np.max(np.abs(r)) <= 1e-12


def test_commutator_diagonal_formula():
    # <n|[A+, A-]|n> = n(1 + k(n-1)) - (n+1)(1 + kn) = -(2kn + 1)
    k = 0.37
    c = fock.make_context(k, 20)
    d = np.diag(fock.commutator(c.Ap, c.Am)).real[:-1]
    n = np.arange(19)
    np.testing.assert_allclose(d, -(2 * k * n + 1), rtol=1e-14)


def test_shape_mismatch():
    with pytest.raises(ValueError):
        fock.commutator(np.eye(3), np.eye(4))
    with pytest.raises(ValueError):
        fock.expectation(np.ones(3), np.eye(4))


def test_matrix_exp_basics():
    np.testing.assert_allclose(fock.matrix_exp(np.zeros((4, 4))), np.eye(4), rtol=0, atol=1e-15)
    d = np.array([0.1, -2.0, 3.5j, 1.0 + 1.0j])
    np.testing.assert_allclose(fock.matrix_exp(np.diag(d)), np.diag(np.exp(d)), rtol=1e-14)


def test_matrix_exp_displacement_vacuum():
    c = fock.make_context(0.0, 60)
    v = fock.matrix_exp(c.adag - c.a)[:, 0]
    n = np.arange(60)
    expect = math.exp(-0.5) / np.array([math.sqrt(math.factorial(int(j))) for j in n])
    np.testing.assert_allclose(v[:20], expect[:20], atol=1e-13)


def _series_oracle(X):
    mpmath.mp.dps = 40
    M = mpmath.matrix(X.tolist())
    return np.array(mpmath.expm(M, method="taylor").tolist(), dtype=complex)


@given(
    st.floats(0.0, 1.0),
    st.complex_numbers(max_magnitude=3.0, allow_nan=False, allow_infinity=False),
)
def test_matrix_exp_against_oracles(k, alpha):
    # nilpotent-plus-diagonal ladder structure on a 10 x 10 block
    c = fock.make_context(k, 10)
    X = alpha * c.Ap - np.conj(alpha) * c.Am + 0.3 * c.A0
    got = fock.matrix_exp(X)
    ref = expm(X)
    assert np.max(np.abs(got - ref)) <= 1e-10 * max(1.0, np.max(np.abs(ref)))


def test_matrix_exp_against_extended_precision():
    c = fock.make_context(0.5, 10)
    X = (2.0 + 1.0j) * c.Ap - (2.0 - 1.0j) * c.Am - 0.5 * c.A0
    assert np.abs(X).sum(axis=0).max() <= 50
    ref = _series_oracle(X)
    got = fock.matrix_exp(X)
    assert np.max(np.abs(got - ref)) / np.max(np.abs(ref)) <= 1e-10


def test_matrix_exp_large_norm_against_scipy():
    c = fock.make_context(1.0, 10)
    X = 2.2 * c.Ap - 2.2 * c.Am
    assert np.abs(X).sum(axis=0).max() > 30
    np.testing.assert_allclose(fock.matrix_exp(X), expm(X), atol=1e-12)


def test_matrix_exp_overflow():
    with pytest.raises(OverflowError):
        fock.matrix_exp(np.array([[np.inf, 0], [0, 1.0]]))
    with pytest.raises(OverflowError):
        fock.matrix_exp(np.diag([800.0, 0.0]))


def test_expectations():
    c = fock.make_context(0.5, 30)
    assert fock.expectation(fock.basis(0, 30), c.n) == 0
    assert fock.expectation(fock.basis(3, 30), c.A0) == pytest.approx(2.0)
    n = np.arange(30)
    coh = np.exp(-0.5) / np.array([math.sqrt(math.factorial(int(j))) for j in n])
    val = fock.expectation(coh, c.n)
    assert abs(val.imag) < 1e-12
    assert val.real == pytest.approx(1.0, abs=1e-12)
