"""Canonical divergences on the simplex and on density matrices, plus
KL-projection complexity measures."""

from .classical import (
    complexity_classical,
    ipf_project,
    marginal,
    multi_information,
    pairs,
    product_of_marginals,
    singletons,
)
from .config import OptimizerConfig, QuadratureConfig
from .errors import (
    DimensionMismatch,
    DomainError,
    EmptyKeepSet,
    GeodivError,
    InvalidState,
    InvalidSubset,
    NotConverged,
    NotHermitian,
    NotPositive,
    OutOfRange,
    QuadratureNotConverged,
    StepTooLarge,
)
from .linalg import dexp_frechet, dlog_frechet, eig_hermitian, jacobi_eigh, log_mean_kernel
from .manyparty import (
    gibbs_state,
    klocal_basis,
    many_party_correlation,
    maxent_project_quantum,
    quantum_multi_information,
)
from .quadrature import eguchi_metric_check, integrate_t_weighted
from .quantum import (
    bogoliubov_inner,
    canonical_divergence_quantum,
    dual_divergence_quantum,
    partial_trace,
    quantum_relative_entropy,
    von_neumann_entropy,
)
from .simplex import (
    canonical_divergence_simplex,
    dual_divergence_simplex,
    fisher_inner,
    kl,
    shannon_entropy,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
