"""Dense Hermitian linear algebra.

Eigendecomposition (LAPACK or cyclic complex Jacobi), spectral matrix
functions, the logarithmic-mean kernel and Daleckii-Krein Frechet
derivatives of ``log`` and ``exp``.
"""

from typing import Callable, NamedTuple

import numpy as np

from .errors import DimensionMismatch, DomainError, NotConverged, NotHermitian, NotPositive

HERMITIAN_TOL = 1e-12

# |x - y| / (x + y) below this uses the series branch of the logarithmic mean.
_SERIES_SWITCH = 1e-3

# "lapack" (numpy.linalg.eigh) or "jacobi"; see eig_hermitian.
DEFAULT_EIG_METHOD = "lapack"


class SpectralDecomposition(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        U = self.eigenvectors
        return (U * self.eigenvalues) @ U.conj().T


def as_hermitian(H, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Return ``(H + H^dagger)/2`` as a complex array after checking symmetry.

    The tolerance is absolute for entries of order one and scales with the
    largest entry otherwise.
    """
    H = np.asarray(H)
    if H.ndim != 2 or H.shape[0] != H.shape[1] or H.shape[0] < 1:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {H.shape}")
    H = H.astype(complex)
    if not np.all(np.isfinite(H)):
        raise NotHermitian("matrix has non-finite entries")
    scale = max(1.0, float(np.max(np.abs(H))))
    asym = float(np.max(np.abs(H - H.conj().T)))
    if asym > tol * scale:
        raise NotHermitian(f"matrix is not Hermitian (max |H - H^dagger| = {asym:.3e})")
    return 0.5 * (H + H.conj().T)


def _check_same_shape(*mats):
    shapes = {m.shape for m in mats}
    if len(shapes) != 1:
        raise DimensionMismatch(f"shape mismatch: {sorted(shapes)}")


def jacobi_eigh(H, tol: float = 1e-14, max_sweeps: int = 100) -> SpectralDecomposition:
    """Cyclic Jacobi eigendecomposition of a complex Hermitian matrix.

    Each pair (p, q) is annihilated by the unitary rotation
    ``[[c, s e^{i phi}], [-s e^{-i phi}, c]]`` where ``phi`` is the phase of
    ``A[p, q]``; this reduces the complex step to the real symmetric one.
    Sweeps stop once the off-diagonal Frobenius norm is at most
    ``tol * ||H||_F``.
    """
    A = np.array(H, dtype=complex)
    n = A.shape[0]
    V = np.eye(n, dtype=complex)
    scale = np.linalg.norm(A)
    if scale == 0.0 or n == 1:
        return SpectralDecomposition(np.real(np.diag(A)).copy(), V)

    for _ in range(max_sweeps):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                r = abs(apq)
                if r <= 1e-300:
                    continue
                phase = apq / r
                tau = (A[q, q].real - A[p, p].real) / (2.0 * r)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                G = np.array([[c, s * phase], [-s * np.conj(phase), c]])
                idx = [p, q]
                A[:, idx] = A[:, idx] @ G
                A[idx, :] = G.conj().T @ A[idx, :]
                A[p, q] = A[q, p] = 0.0
                V[:, idx] = V[:, idx] @ G
    else:
        raise NotConverged(f"Jacobi iteration did not converge in {max_sweeps} sweeps")

    w = np.real(np.diag(A))
    order = np.argsort(w, kind="stable")
    return SpectralDecomposition(w[order], V[:, order])


def eig_hermitian(H, method: str | None = None) -> SpectralDecomposition:
    """Eigendecomposition with ascending eigenvalues and unitary eigenvectors.

    ``method`` is ``"lapack"`` (default) or ``"jacobi"``.
    """
    H = as_hermitian(H)
    method = method or DEFAULT_EIG_METHOD
    if method == "lapack":
        w, U = np.linalg.eigh(H)
        return SpectralDecomposition(w, U)
    if method == "jacobi":
        return jacobi_eigh(H)
    raise ValueError(f"unknown eigendecomposition method {method!r}")


def _from_spectrum(U, values):
    M = (U * values) @ U.conj().T
    return 0.5 * (M + M.conj().T)


def spectral_fn(H, f: Callable[[np.ndarray], np.ndarray], method: str | None = None) -> np.ndarray:
    """Apply a real scalar function to a Hermitian matrix through its spectrum."""
    w, U = eig_hermitian(H, method)
    with np.errstate(all="ignore"):
        fw = np.asarray(f(w), dtype=float)
    if fw.shape != w.shape or not np.all(np.isfinite(fw)):
        raise DomainError(f"function undefined on spectrum {w}")
    return _from_spectrum(U, fw)


def log_hermitian(P) -> np.ndarray:
    w, U = eig_hermitian(P)
    if w[0] <= 0:
        raise NotPositive(f"matrix logarithm needs a positive matrix (min eigenvalue {w[0]:.3e})")
    return _from_spectrum(U, np.log(w))


def exp_hermitian(H) -> np.ndarray:
    return spectral_fn(H, np.exp)


def log_mean_kernel(x, y):
    """Logarithmic mean ``(x - y) / (log x - log y)``, with ``L(x, x) = x``.

    Equals the integral of ``x**s * y**(1 - s)`` over ``s`` in [0, 1].
    Works elementwise on broadcastable arrays. The result depends only on
    ``max(x, y)`` and ``min(x, y)`` so it is exactly symmetric.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(x <= 0) or np.any(y <= 0):
        raise NotPositive("logarithmic mean needs positive arguments")
    hi = np.maximum(x, y)
    lo = np.minimum(x, y)
    diff = hi - lo
    u = diff / (hi + lo)
    near = u < _SERIES_SWITCH
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = diff / np.log1p(diff / lo)
    # m * u / artanh(u) with artanh(u)/u = 1 + u^2/3 + u^4/5 + u^6/7 + ...
    u2 = u * u
    series = 0.5 * (hi + lo) / (1.0 + u2 * (1.0 / 3 + u2 * (1.0 / 5 + u2 / 7)))
    out = np.clip(np.where(near, series, direct), lo, hi)
    return out if out.ndim else float(out)


def log_mean_matrix(w) -> np.ndarray:
    """Matrix ``L(w_i, w_j)`` for a positive spectrum ``w``."""
    w = np.asarray(w, dtype=float)
    return log_mean_kernel(w[:, None], w[None, :])


def dlog_frechet(P, V) -> np.ndarray:
    """Frechet derivative of ``log`` at positive ``P`` in direction ``V``.

    In the eigenbasis of ``P`` the derivative is the Hadamard product of
    ``V`` with the first divided differences of ``log``, which are the
    reciprocals of the logarithmic mean.
    """
    P = as_hermitian(P)
    V = as_hermitian(V)
    _check_same_shape(P, V)
    w, U = eig_hermitian(P)
    if w[0] <= 0:
        raise NotPositive(f"dlog needs a positive matrix (min eigenvalue {w[0]:.3e})")
    Vt = U.conj().T @ V @ U
    return _from_spectrum_matrix(U, Vt / log_mean_matrix(w))


def dexp_frechet(H, V) -> np.ndarray:
    """Frechet derivative of ``exp`` at Hermitian ``H`` in direction ``V``.

    The divided differences ``(e^a - e^b)/(a - b)`` are logarithmic means of
    ``e^a`` and ``e^b``; the spectrum is shifted by its maximum before
    exponentiating and the factor restored afterwards.
    """
    H = as_hermitian(H)
    V = as_hermitian(V)
    _check_same_shape(H, V)
    w, U = eig_hermitian(H)
    top = w[-1]
    ew = np.exp(w - top)
    Vt = U.conj().T @ V @ U
    return np.exp(top) * _from_spectrum_matrix(U, Vt * log_mean_matrix(ew))


def _from_spectrum_matrix(U, Mt):
    M = U @ Mt @ U.conj().T
    return 0.5 * (M + M.conj().T)
