"""Fisher geometry of the open probability simplex.

Points are full length-n weight vectors (no chart coordinates); tangent
vectors are length-n arrays summing to zero.
"""

import numpy as np

from .config import QuadratureConfig
from .errors import DimensionMismatch, InvalidState, NotPositive
from .quadrature import integrate_t_weighted

MIN_WEIGHT = 1e-12
NORM_TOL = 1e-12


def as_probability_vector(p, atol: float = NORM_TOL) -> np.ndarray:
    """Validate a strictly positive, normalized weight vector.

    Weights below ``MIN_WEIGHT`` are rejected rather than clamped.
    """
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size < 1:
        raise DimensionMismatch(f"expected a 1-d weight vector, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise InvalidState("weights must be finite")
    if np.min(p) < MIN_WEIGHT:
        raise NotPositive(f"weights must be >= {MIN_WEIGHT:g} (min {np.min(p):.3e})")
    total = float(np.sum(p))
    if abs(total - 1.0) > atol:
        raise InvalidState(f"weights sum to {total!r}, not 1")
    return p


def as_tangent(X, n: int) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.shape != (n,):
        raise DimensionMismatch(f"tangent of shape {X.shape} at a point of length {n}")
    scale = max(1.0, float(np.max(np.abs(X))) if X.size else 0.0)
    if abs(float(np.sum(X))) > NORM_TOL * scale * n:
        raise InvalidState("simplex tangent vectors must sum to zero")
    return X


def _pair(p, q):
    p = as_probability_vector(p)
    q = as_probability_vector(q)
    if p.shape != q.shape:
        raise DimensionMismatch(f"lengths differ: {p.size} vs {q.size}")
    return p, q


def fisher_inner(p, X, Y) -> float:
    """Fisher metric ``sum_i X_i Y_i / p_i``."""
    p = as_probability_vector(p)
    X = as_tangent(X, p.size)
    Y = as_tangent(Y, p.size)
    return float(np.sum(X * Y / p))


def m_geodesic(p, q, t: float) -> np.ndarray:
    """Mixture geodesic ``p + t (q - p)``."""
    p, q = _pair(p, q)
    return p + t * (q - p)


def _e_log_weights(p, q, t):
    z = np.log(p) + t * (np.log(q) - np.log(p))
    z -= np.max(z)
    w = np.exp(z)
    return w / np.sum(w)


def e_geodesic(p, q, t: float) -> np.ndarray:
    """Exponential geodesic ``p_i (q_i/p_i)^t`` renormalized, in log space."""
    p, q = _pair(p, q)
    return _e_log_weights(p, q, t)


def e_velocity(p, q, t: float) -> np.ndarray:
    """d/dt of the exponential geodesic; sums to zero."""
    p, q = _pair(p, q)
    g = _e_log_weights(p, q, t)
    a = np.log(q) - np.log(p)
    return g * (a - np.dot(g, a))


def kl(p, q) -> float:
    """Kullback-Leibler divergence ``sum_i p_i log(p_i / q_i)`` in nats.

    Evaluated as ``sum_i p_i (r_i - 1 - log r_i)`` with ``r = q / p``, which
    equals the usual form on the simplex and is non-negative term by term.
    """
    p, q = _pair(p, q)
    x = q / p - 1.0
    return float(np.sum(p * (x - np.log1p(x))))


def canonical_divergence_simplex(p, q, cfg: QuadratureConfig | None = None) -> float:
    """``int_0^1 t ||d/dt gamma_m||^2 dt`` along the mixture geodesic."""
    p, q = _pair(p, q)
    d = q - p

    def speed(t):
        return np.sum(d * d / (p + t * d))

    return integrate_t_weighted(speed, cfg)


def dual_divergence_simplex(p, q, cfg: QuadratureConfig | None = None) -> float:
    """``int_0^1 t ||d/dt gamma_e||^2 dt`` along the exponential geodesic."""
    p, q = _pair(p, q)
    a = np.log(q) - np.log(p)

    def speed(t):
        g = _e_log_weights(p, q, t)
        c = a - np.dot(g, a)
        # ||g * c||^2_g = sum g c^2
        return np.dot(g, c * c)

    return integrate_t_weighted(speed, cfg)


def shannon_entropy(p) -> float:
    p = np.asarray(p, dtype=float).ravel()
    return float(-np.sum(p * np.log(p)))


def chart_to_simplex(xi) -> np.ndarray:
    """Chart coordinates (first n-1 weights) to the full weight vector."""
    xi = np.asarray(xi, dtype=float)
    return np.append(xi, 1.0 - np.sum(xi))


def in_chart_domain(xi) -> bool:
    p = chart_to_simplex(xi)
    return bool(np.min(p) >= MIN_WEIGHT)


def fisher_chart_metric(p) -> np.ndarray:
    """Fisher matrix ``delta_ij / p_i + 1 / p_n`` in the first n-1 coordinates."""
    p = as_probability_vector(p)
    return np.diag(1.0 / p[:-1]) + 1.0 / p[-1]
