"""Classical complexity: KL distance to hierarchical exponential families.

A joint distribution over ``n`` finite sites is a strictly positive array
whose shape is the tuple of site cardinalities (flattening in C order gives
the lexicographic, site-major listing). Sites are numbered from 0.
"""

import itertools
import logging
from dataclasses import dataclass

import numpy as np

from .config import OptimizerConfig
from .errors import DimensionMismatch, InvalidSubset, NotConverged
from .simplex import as_probability_vector, kl, shannon_entropy

log = logging.getLogger(__name__)

MAX_CONFIGURATIONS = 2**20


def as_joint(p, cards=None) -> np.ndarray:
    """Validate a joint distribution, reshaping a flat vector to ``cards``."""
    p = np.asarray(p, dtype=float)
    if cards is not None:
        cards = tuple(int(c) for c in cards)
        if any(c < 2 for c in cards):
            raise DimensionMismatch(f"site cardinalities must be >= 2, got {cards}")
        if int(np.prod(cards)) != p.size:
            raise DimensionMismatch(f"{p.size} weights for cardinalities {cards}")
        p = p.reshape(cards)
    if p.ndim < 1 or any(c < 2 for c in p.shape):
        raise DimensionMismatch(f"site cardinalities must be >= 2, got {p.shape}")
    if p.size > MAX_CONFIGURATIONS:
        raise DimensionMismatch(f"{p.size} configurations exceeds {MAX_CONFIGURATIONS}")
    as_probability_vector(p.ravel())
    return p


def _check_subset(A, n):
    A = tuple(sorted(set(int(a) for a in A)))
    if not A:
        raise InvalidSubset("subsets must be non-empty")
    if A[0] < 0 or A[-1] >= n:
        raise InvalidSubset(f"subset {A} has a site outside 0..{n - 1}")
    return A


def reduce_family(subsets, n: int) -> tuple[tuple[int, ...], ...]:
    """Canonical antichain form of a marginal family.

    Subsets contained in another member are dropped; every site must be
    covered.
    """
    sets = {_check_subset(A, n) for A in subsets}
    keep = [A for A in sets if not any(set(A) < set(B) for B in sets)]
    covered = set().union(*keep) if keep else set()
    missing = sorted(set(range(n)) - covered)
    if missing:
        raise InvalidSubset(f"sites {missing} are not covered by the family")
    return tuple(sorted(keep, key=lambda A: (len(A), A)))


def singletons(n: int):
    return tuple((i,) for i in range(n))


def pairs(n: int):
    if n == 1:
        return ((0,),)
    return tuple(itertools.combinations(range(n), 2))


def marginal(p, A) -> np.ndarray:
    """Marginal on the sites in ``A``, axes in ascending site order."""
    p = np.asarray(p, dtype=float)
    A = _check_subset(A, p.ndim)
    other = tuple(i for i in range(p.ndim) if i not in A)
    return p.sum(axis=other) if other else p.copy()


def _lift(m, A, ndim):
    """Reshape a marginal on ``A`` so it broadcasts against the full array."""
    shape = [1] * ndim
    for axis, size in zip(A, m.shape):
        shape[axis] = size
    return m.reshape(shape)


def product_of_marginals(p) -> np.ndarray:
    p = as_joint(p)
    q = np.ones(p.shape)
    for i in range(p.ndim):
        q = q * _lift(marginal(p, (i,)), (i,), p.ndim)
    return q


def multi_information(p) -> float:
    """``sum_i H(X_i) - H(X_1..X_n)`` in nats."""
    p = as_joint(p)
    parts = sum(shannon_entropy(marginal(p, (i,))) for i in range(p.ndim))
    return max(parts - shannon_entropy(p), 0.0)


@dataclass
class ProjectionReport:
    projection: np.ndarray
    divergence: float
    iterations: int
    residual: float


def marginal_residual(p, q, family) -> float:
    return max(float(np.max(np.abs(marginal(p, A) - marginal(q, A)))) for A in family)


def ipf_project(p, family, cfg: OptimizerConfig | None = None) -> ProjectionReport:
    """Maximum-entropy projection of ``p`` onto the family's exponential model.

    Iterative proportional fitting from the uniform distribution: each sweep
    rescales the iterate so that its marginal on every ``A`` matches ``p``.
    Iterations count sweeps. Raises :class:`NotConverged` (carrying the best
    report) if the marginal residual is still above ``cfg.tolerance`` after
    ``cfg.max_iterations`` sweeps.
    """
    cfg = cfg or OptimizerConfig()
    p = as_joint(p)
    family = reduce_family(family, p.ndim)
    targets = [(A, marginal(p, A)) for A in family]

    q = np.full(p.shape, 1.0 / p.size)
    residual = marginal_residual(p, q, family)
    sweeps = 0
    while residual > cfg.tolerance and sweeps < cfg.max_iterations:
        for A, target in targets:
            q = q * _lift(target / marginal(q, A), A, p.ndim)
        q /= q.sum()
        sweeps += 1
        residual = marginal_residual(p, q, family)

    report = ProjectionReport(q, kl(p.ravel(), q.ravel()), sweeps, residual)
    if residual > cfg.tolerance:
        raise NotConverged(
            f"IPF stopped after {sweeps} sweeps with marginal residual {residual:.3e}", report
        )
    log.debug("IPF converged in %d sweeps (residual %.2e)", sweeps, residual)
    return report


def complexity_classical(p, family, cfg: OptimizerConfig | None = None) -> ProjectionReport:
    """``KL(p, p_hat)``, the distance from ``p`` to the family's exponential model."""
    return ipf_project(p, family, cfg)


def exponential_family_member(cards, family, rng, scale: float = 1.0) -> np.ndarray:
    """A random member ``q ∝ exp(sum_A f_A(x_A))`` with Gaussian tables ``f_A``."""
    cards = tuple(int(c) for c in cards)
    family = reduce_family(family, len(cards))
    logq = np.zeros(cards)
    for A in family:
        f = scale * rng.standard_normal([cards[i] for i in A])
        logq = logq + _lift(f, A, len(cards))
    q = np.exp(logq - logq.max())
    return q / q.sum()
