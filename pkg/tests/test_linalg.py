import numpy as np
import pytest
import scipy.linalg as sla
from hypothesis import given, settings
from hypothesis import strategies as st

from geodiv.errors import DimensionMismatch, DomainError, NotHermitian, NotPositive
from geodiv.linalg import (
    as_hermitian,
    dexp_frechet,
    dlog_frechet,
    eig_hermitian,
    exp_hermitian,
    jacobi_eigh,
    log_hermitian,
    log_mean_kernel,
    log_mean_matrix,
    spectral_fn,
)

from conftest import density_from_seed, seeds


def random_hermitian(rng, d):
    G = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return 0.5 * (G + G.conj().T)


def test_pauli_x_eigenpairs():
    X = np.array([[0, 1], [1, 0]], dtype=complex)
    for method in ("jacobi", "lapack"):
        w, U = eig_hermitian(X, method)
        np.testing.assert_allclose(w, [-1, 1], atol=1e-14)
        minus = np.array([1, -1]) / np.sqrt(2)
        plus = np.array([1, 1]) / np.sqrt(2)
        assert abs(abs(np.vdot(U[:, 0], minus)) - 1) < 1e-14
        assert abs(abs(np.vdot(U[:, 1], plus)) - 1) < 1e-14


@pytest.mark.parametrize("d", [1, 2, 3, 5, 8, 16])
def test_jacobi_matches_lapack(rng, d):
    H = random_hermitian(rng, d)
    w, U = jacobi_eigh(H)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(H), atol=1e-12)
    np.testing.assert_allclose(U.conj().T @ U, np.eye(d), atol=1e-12)
    np.testing.assert_allclose((U * w) @ U.conj().T, H, atol=1e-12)
    assert np.all(np.diff(w) >= 0)


def test_jacobi_degenerate_spectrum():
    rng = np.random.default_rng(3)
    Q, _ = np.linalg.qr(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))
    H = (Q * np.array([1.0, 1.0, 2.0, 2.0])) @ Q.conj().T
    dec = jacobi_eigh(H)
    np.testing.assert_allclose(dec.eigenvalues, [1, 1, 2, 2], atol=1e-13)
    np.testing.assert_allclose(dec.reconstruct(), H, atol=1e-13)


def test_as_hermitian_rejects_and_symmetrizes():
    with pytest.raises(NotHermitian):
        as_hermitian(np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(DimensionMismatch):
        as_hermitian(np.ones((2, 3)))
    A = np.array([[1.0, 1 + 1e-14], [1.0, 1.0]])
    H = as_hermitian(A)
    assert np.array_equal(H, H.conj().T)


def test_log_and_exp_match_scipy(rng):
    rho = density_from_seed(7, 5)
    np.testing.assert_allclose(log_hermitian(rho), sla.logm(rho), atol=1e-11)
    H = random_hermitian(rng, 5)
    np.testing.assert_allclose(exp_hermitian(H), sla.expm(H), atol=1e-11)


def test_log_rejects_non_positive():
    with pytest.raises(NotPositive):
        log_hermitian(np.diag([1.0, 0.0]))
    with pytest.raises(DomainError):
        spectral_fn(np.diag([1.0, -1.0]), np.sqrt)


def test_log_mean_kernel_values():
    assert log_mean_kernel(1.0, np.e) == pytest.approx(np.e - 1, rel=1e-15)
    assert log_mean_kernel(2.5, 2.5) == 2.5
    # near-diagonal branch agrees with high-precision evaluation
    import mpmath

    mpmath.mp.dps = 50
    for x, y in [(1.0, 1.0 + 1e-9), (0.3, 0.3 * (1 + 5e-4)), (1e-6, 1.0001e-6), (2.0, 2.003)]:
        exact = (mpmath.mpf(y) - mpmath.mpf(x)) / (mpmath.log(mpmath.mpf(y)) - mpmath.log(mpmath.mpf(x)))
        assert log_mean_kernel(x, y) == pytest.approx(float(exact), rel=1e-14)


@given(st.floats(1e-8, 1e3), st.floats(1e-8, 1e3))
def test_log_mean_kernel_properties(x, y):
    L = log_mean_kernel(x, y)
    assert L == log_mean_kernel(y, x)
    assert min(x, y) <= L <= max(x, y)
    # logarithmic mean sits between the geometric and arithmetic means
    assert np.sqrt(x * y) * (1 - 1e-12) <= L <= 0.5 * (x + y) * (1 + 1e-12)


def test_log_mean_matrix_diagonal():
    w = np.array([0.1, 0.3, 0.6])
    M = log_mean_matrix(w)
    np.testing.assert_allclose(np.diag(M), w)
    np.testing.assert_allclose(M, M.T)


@settings(max_examples=25, deadline=None)
@given(seeds, st.integers(2, 5))
def test_dlog_inverts_dexp(seed, d):
    rng = np.random.default_rng(seed)
    P = density_from_seed(seed, d)
    V = random_hermitian(rng, d)
    W = dlog_frechet(P, V)
    back = dexp_frechet(log_hermitian(P), W)
    np.testing.assert_allclose(back, V, atol=1e-9 * max(1, np.abs(V).max()))


def test_dexp_matches_scipy_frechet(rng):
    H = random_hermitian(rng, 4)
    V = random_hermitian(rng, 4)
    _, oracle = sla.expm_frechet(H, V)
    np.testing.assert_allclose(dexp_frechet(H, V), oracle, atol=1e-11)


def test_dlog_central_difference(rng):
    P = np.eye(3) + 3 * density_from_seed(11, 3)
    V = random_hermitian(rng, 3)
    V /= np.linalg.norm(V, 2)
    h = 1e-4
    fd = (log_hermitian(P + h * V) - log_hermitian(P - h * V)) / (2 * h)
    assert np.max(np.abs(fd - dlog_frechet(P, V))) < 1e-7
