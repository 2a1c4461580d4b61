"""t-weighted geodesic quadrature and the Eguchi finite-difference check."""

import logging
from functools import lru_cache
from typing import Callable

import numpy as np

from .config import QuadratureConfig
from .errors import GeodivError, StepTooLarge, QuadratureNotConverged

log = logging.getLogger(__name__)

SPEED_ROUNDOFF = 1e-12


@lru_cache(maxsize=None)
def gauss_legendre_unit(npoints: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(npoints)
    return 0.5 * (x + 1.0), 0.5 * w


def _rule(f, a, b, npoints):
    x, w = gauss_legendre_unit(npoints)
    t = a + (b - a) * x
    vals = np.empty(npoints)
    for i, ti in enumerate(t):
        v = float(f(ti))
        if not np.isfinite(v):
            raise ValueError(f"speed function returned {v} at t={ti}")
        if v < -SPEED_ROUNDOFF:
            raise ValueError(f"negative squared speed {v:.3e} at t={ti}")
        vals[i] = v
    return (b - a) * float(np.dot(w, t * vals))


def integrate_t_weighted(f: Callable[[float], float], cfg: QuadratureConfig | None = None) -> float:
    """Integrate ``t * f(t)`` over [0, 1].

    ``f`` is a squared geodesic speed. Each interval is integrated with the
    base rule and the coarser check rule; if they disagree by more than the
    interval's share of ``cfg.tolerance`` it is bisected. Raises
    :class:`QuadratureNotConverged` once more than ``cfg.max_subdivisions``
    bisections would be needed.
    """
    cfg = cfg or QuadratureConfig()
    stack = [(0.0, 1.0)]
    total = 0.0
    splits = 0
    while stack:
        a, b = stack.pop()
        fine = _rule(f, a, b, cfg.base_points)
        coarse = _rule(f, a, b, cfg.check_points)
        err = abs(fine - coarse)
        if err <= cfg.tolerance * (b - a):
            total += fine
            continue
        if splits >= cfg.max_subdivisions:
            raise QuadratureNotConverged((a, b), err, splits)
        splits += 1
        mid = 0.5 * (a + b)
        stack.extend([(mid, b), (a, mid)])
    if splits:
        log.debug("t-quadrature used %d bisections", splits)
    return total


def eguchi_metric_check(
    divergence: Callable[[np.ndarray, np.ndarray], float],
    point,
    metric,
    h: float,
    domain: Callable[[np.ndarray], bool] | None = None,
) -> float:
    """Max-abs gap between ``-d_i d'_j D`` at the diagonal and ``metric``.

    The mixed derivative is taken with the four-point central stencil in
    chart coordinates, so the gap is O(h^2) for a smooth divergence.
    ``metric`` is either a matrix or a callable ``metric(e_i, e_j)``.
    If ``domain`` is given, every perturbed point must satisfy it; a
    divergence that rejects its input also counts as leaving the manifold.
    """
    if not h > 0:
        raise ValueError("step must be positive")
    x = np.asarray(point, dtype=float)
    n = x.size
    eye = np.eye(n)
    if callable(metric):
        g = np.array([[metric(eye[i], eye[j]) for j in range(n)] for i in range(n)])
    else:
        g = np.asarray(metric, dtype=float)
        if g.shape != (n, n):
            raise ValueError(f"metric shape {g.shape} does not match point of size {n}")

    def D(a, b):
        for z in (a, b):
            if domain is not None and not domain(z):
                raise StepTooLarge(f"step h={h} leaves the manifold at {z}")
        try:
            return float(divergence(a, b))
        except GeodivError as exc:
            if isinstance(exc, StepTooLarge):
                raise
            raise StepTooLarge(f"step h={h} leaves the manifold: {exc}") from exc

    fd = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            pi, mi = x + h * eye[i], x - h * eye[i]
            pj, mj = x + h * eye[j], x - h * eye[j]
            fd[i, j] = -(D(pi, pj) - D(pi, mj) - D(mi, pj) + D(mi, mj)) / (4.0 * h * h)
    return float(np.max(np.abs(fd - g)))
