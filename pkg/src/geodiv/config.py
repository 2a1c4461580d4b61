"""Configuration dataclasses for quadrature and iterative projections."""

from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class QuadratureConfig:
    """Settings for the t-weighted geodesic quadrature.

    ``base_points`` Gauss-Legendre nodes are compared against a coarser
    rule with two thirds as many nodes; intervals whose two estimates differ
    by more than their share of ``tolerance`` are bisected, at most
    ``max_subdivisions`` times in total.
    """

    base_points: int = 48
    tolerance: float = 1e-9
    max_subdivisions: int = 20

    def __post_init__(self):
        if self.base_points < 3:
            raise ValueError("base_points must be >= 3 so the check rule is coarser")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.max_subdivisions < 0:
            raise ValueError("max_subdivisions must be non-negative")

    @property
    def check_points(self) -> int:
        return max(2, (2 * self.base_points) // 3)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class OptimizerConfig:
    """Stopping rules for IPF and the Gibbs-family fit.

    ``tolerance`` bounds the max marginal mismatch (IPF) or the max-abs
    gradient of the free energy (Gibbs fit).
    """

    tolerance: float = 1e-9
    max_iterations: int = 10_000
    precondition: bool = True

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.max_iterations < 0:
            raise ValueError("max_iterations must be non-negative")

    def to_dict(self) -> dict:
        return asdict(self)
