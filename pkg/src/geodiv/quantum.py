"""Geometry of full-rank density matrices under the Bogoliubov covariance.

Tangent vectors come in two representations: the (m)-representation is the
derivative of the state itself (traceless Hermitian), the
(e)-representation is the derivative of ``log rho`` (Hermitian with zero
mean under ``rho``). The logarithmic mean of eigenvalue pairs links the two,
so every integral over the interpolation parameter of
``rho**s X rho**(1-s)`` is evaluated in closed form in the eigenbasis.
"""

import numpy as np

from .config import QuadratureConfig
from .errors import DimensionMismatch, EmptyKeepSet, InvalidState, InvalidSubset, NotPositive
from .linalg import (
    as_hermitian,
    eig_hermitian,
    log_hermitian,
    log_mean_matrix,
)
from .quadrature import integrate_t_weighted

MIN_EIGENVALUE = 1e-12
TRACE_TOL = 1e-10
TRACELESS_TOL = 1e-10


def as_density_matrix(rho, atol: float = TRACE_TOL) -> np.ndarray:
    """Validate a Hermitian, unit-trace matrix with spectrum above 1e-12."""
    rho = as_hermitian(rho)
    tr = float(np.trace(rho).real)
    if abs(tr - 1.0) > atol:
        raise InvalidState(f"trace is {tr!r}, not 1")
    wmin = np.linalg.eigvalsh(rho)[0]
    if wmin <= MIN_EIGENVALUE:
        raise NotPositive(f"density matrix must be full rank (min eigenvalue {wmin:.3e})")
    return rho


def _pair(rho1, rho2):
    rho1 = as_density_matrix(rho1)
    rho2 = as_density_matrix(rho2)
    if rho1.shape != rho2.shape:
        raise DimensionMismatch(f"dims differ: {rho1.shape[0]} vs {rho2.shape[0]}")
    return rho1, rho2


def _operand(A, dim):
    A = as_hermitian(A)
    if A.shape != (dim, dim):
        raise DimensionMismatch(f"operator of shape {A.shape} for a state of dim {dim}")
    return A


def _m_tangent(V, dim):
    V = _operand(V, dim)
    if abs(np.trace(V)) > TRACELESS_TOL * max(1.0, float(np.max(np.abs(V)))):
        raise InvalidState("(m)-representation must be traceless")
    return V


def _spectrum(rho):
    w, U = eig_hermitian(rho)
    if w[0] <= 0:
        raise NotPositive(f"state lost positivity (min eigenvalue {w[0]:.3e})")
    return w, U


def bogoliubov_inner(rho, A, B) -> float:
    """``int_0^1 Tr(rho^s A rho^(1-s) B) ds`` via the logarithmic-mean kernel."""
    rho = as_density_matrix(rho)
    A = _operand(A, rho.shape[0])
    B = _operand(B, rho.shape[0])
    w, U = _spectrum(rho)
    At = U.conj().T @ A @ U
    Bt = U.conj().T @ B @ U
    return float(np.real(np.sum(log_mean_matrix(w) * At * Bt.T)))


def e_representation(rho, V) -> np.ndarray:
    """Solve ``int_0^1 rho^s X rho^(1-s) ds = V`` for Hermitian ``X``.

    ``V`` is an (m)-representation; the result is the matching
    (e)-representation and satisfies ``Tr(rho X) = 0``.
    """
    rho = as_density_matrix(rho)
    V = _m_tangent(V, rho.shape[0])
    w, U = _spectrum(rho)
    Xt = (U.conj().T @ V @ U) / log_mean_matrix(w)
    X = U @ Xt @ U.conj().T
    return 0.5 * (X + X.conj().T)


def m_representation(rho, X) -> np.ndarray:
    """Forward map ``X -> int_0^1 rho^s X rho^(1-s) ds``."""
    rho = as_density_matrix(rho)
    X = _operand(X, rho.shape[0])
    w, U = _spectrum(rho)
    Vt = (U.conj().T @ X @ U) * log_mean_matrix(w)
    V = U @ Vt @ U.conj().T
    return 0.5 * (V + V.conj().T)


def _fisher_norm_sq(w, Vt):
    """``Tr(V dlog(V))`` from the spectrum and the rotated (m)-tangent."""
    return float(np.real(np.sum(np.abs(Vt) ** 2 / log_mean_matrix(w))))


def quantum_fisher(rho, D1, D2) -> float:
    """Quantum Fisher metric ``Tr(D1 * e_representation(rho, D2))``."""
    rho = as_density_matrix(rho)
    D1 = _m_tangent(D1, rho.shape[0])
    return float(np.real(np.trace(D1 @ e_representation(rho, D2))))


def von_neumann_entropy(rho) -> float:
    """``-Tr(rho log rho)`` in nats."""
    w = np.linalg.eigvalsh(as_density_matrix(rho))
    return float(-np.sum(w * np.log(w)))


def quantum_relative_entropy(rho1, rho2) -> float:
    """``Tr rho1 (log rho1 - log rho2)`` in nats.

    Uses both spectral decompositions: the cross term is
    ``sum_ij w1_j |<v_i|u_j>|^2 log w2_i``. The result is non-negative
    (Klein's inequality), so round-off below zero is clipped.
    """
    rho1, rho2 = _pair(rho1, rho2)
    w1, U1 = _spectrum(rho1)
    w2, U2 = _spectrum(rho2)
    overlap = np.abs(U2.conj().T @ U1) ** 2
    cross = float(np.log(w2) @ overlap @ w1)
    return max(float(np.dot(w1, np.log(w1))) - cross, 0.0)


def m_geodesic_q(rho1, rho2, t: float) -> np.ndarray:
    """Mixture geodesic ``(1 - t) rho1 + t rho2``; velocity is ``rho2 - rho1``."""
    rho1, rho2 = _pair(rho1, rho2)
    return (1.0 - t) * rho1 + t * rho2


def _e_geodesic_data(rho1, rho2):
    H = log_hermitian(rho1)
    A = log_hermitian(rho2) - H
    return H, A


def _gibbs_from(K):
    """Normalized ``exp(K)`` with its spectrum and eigenvectors."""
    w, U = eig_hermitian(K)
    e = np.exp(w - w[-1])
    e /= np.sum(e)
    return e, U


def e_geodesic_q(rho1, rho2, t: float) -> np.ndarray:
    """Exponential geodesic ``exp(H + tA) / Tr exp(H + tA)``.

    ``H = log rho1`` and ``A = log rho2 - log rho1``.
    """
    rho1, rho2 = _pair(rho1, rho2)
    H, A = _e_geodesic_data(rho1, rho2)
    e, U = _gibbs_from(H + t * A)
    G = (U * e) @ U.conj().T
    return 0.5 * (G + G.conj().T)


def e_velocity_q(rho1, rho2, t: float) -> tuple[np.ndarray, np.ndarray]:
    """(m)- and (e)-representations of the exponential-geodesic velocity.

    The (m)-representation is the exact derivative of the state: the
    Frechet derivative of ``exp`` at ``H + tA - log Z`` applied to ``A``,
    minus ``Tr(A gamma) gamma``. The (e)-representation is
    ``A - Tr(A gamma)``.
    """
    rho1, rho2 = _pair(rho1, rho2)
    H, A = _e_geodesic_data(rho1, rho2)
    e, U = _gibbs_from(H + t * A)
    At = U.conj().T @ A @ U
    mean_a = float(np.real(np.dot(e, np.diag(At))))
    eye = np.eye(A.shape[0])
    # divided differences of exp at the normalized spectrum are L(e_i, e_j)
    vt = At * log_mean_matrix(e) - mean_a * np.diag(e)
    vm = U @ vt @ U.conj().T
    return 0.5 * (vm + vm.conj().T), A - mean_a * eye


def canonical_divergence_quantum(rho1, rho2, cfg: QuadratureConfig | None = None) -> float:
    """``int_0^1 t Tr(d gamma_m/dt * d/dt log gamma_m) dt`` on the mixture geodesic."""
    rho1, rho2 = _pair(rho1, rho2)
    D = rho2 - rho1

    def speed(t):
        w, U = _spectrum(rho1 + t * D)
        return _fisher_norm_sq(w, U.conj().T @ D @ U)

    return integrate_t_weighted(speed, cfg)


def dual_divergence_quantum(rho1, rho2, cfg: QuadratureConfig | None = None) -> float:
    """``int_0^1 t Tr(v_m v_e) dt`` on the exponential geodesic.

    The pairing of the two velocity representations equals the Bogoliubov
    variance of ``A = log rho2 - log rho1`` in the state ``gamma_e(t)``.
    It reduces to the ordinary variance only when ``A`` commutes with
    ``log rho1``.
    """
    rho1, rho2 = _pair(rho1, rho2)
    H, A = _e_geodesic_data(rho1, rho2)
    eye = np.eye(A.shape[0])

    def speed(t):
        e, U = _gibbs_from(H + t * A)
        At = U.conj().T @ A @ U
        At = At - np.real(np.dot(e, np.diag(At))) * eye
        return float(np.real(np.sum(log_mean_matrix(e) * np.abs(At) ** 2)))

    return integrate_t_weighted(speed, cfg)


def partial_trace(rho, site_dims, keep) -> np.ndarray:
    """Reduced state on the sites in ``keep`` (0-based, returned in ascending order)."""
    site_dims = [int(d) for d in site_dims]
    rho = np.asarray(rho)
    if any(d < 1 for d in site_dims) or int(np.prod(site_dims)) != rho.shape[0]:
        raise DimensionMismatch(f"site dims {site_dims} do not multiply to {rho.shape[0]}")
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise EmptyKeepSet("keep set must be non-empty")
    n = len(site_dims)
    if keep[0] < 0 or keep[-1] >= n:
        raise InvalidSubset(f"site index out of range in {keep} for {n} sites")
    letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    if 2 * n > len(letters):
        raise DimensionMismatch("too many sites")
    rows = letters[:n]
    cols = [rows[i] if i not in keep else letters[n + i] for i in range(n)]
    out = "".join(rows[i] for i in keep) + "".join(cols[i] for i in keep)
    t = rho.reshape(site_dims + site_dims)
    red = np.einsum(f"{rows}{''.join(cols)}->{out}", t)
    d = int(np.prod([site_dims[i] for i in keep]))
    return red.reshape(d, d)
