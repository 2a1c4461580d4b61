"""Exception hierarchy shared by every geodiv module."""


class GeodivError(Exception):
    """Base class for all library errors."""


class InvalidState(GeodivError, ValueError):
    """Input violates the invariants of its domain type."""


class NotHermitian(InvalidState):
    pass


class NotPositive(InvalidState):
    pass


class DomainError(InvalidState):
    """A spectral function is undefined somewhere on the spectrum."""


class DimensionMismatch(GeodivError, ValueError):
    pass


class InvalidSubset(GeodivError, ValueError):
    pass


class EmptyKeepSet(InvalidSubset):
    pass


class OutOfRange(GeodivError, ValueError):
    pass


class StepTooLarge(GeodivError, ValueError):
    """A finite-difference stencil left the manifold."""


class QuadratureNotConverged(GeodivError, ArithmeticError):
    def __init__(self, interval, residual, subdivisions):
        self.interval = interval
        self.residual = residual
        self.subdivisions = subdivisions
        super().__init__(
            f"quadrature did not converge after {subdivisions} subdivisions; "
            f"worst interval [{interval[0]:.6g}, {interval[1]:.6g}] "
            f"residual {residual:.3e}"
        )


class NotConverged(GeodivError, ArithmeticError):
    """Iterative solver stopped early; ``report`` holds the best iterate."""

    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)
