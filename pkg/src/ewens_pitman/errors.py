"""Exception types shared across the package."""


class OutOfRangeError(ValueError):
    """A model parameter lies outside its admissible range."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class BranchCutError(ValueError):
    """Evaluation was requested on the branch cut of a fractional power."""


class PoleAtZeroError(ValueError):
    """Evaluation was requested at the pole z = 0."""


class NoConvergenceError(RuntimeError):
    """An iterative solver failed to converge (signals an internal bug)."""

    def __init__(self, message: str, iterations: int | None = None):
        super().__init__(message)
        self.iterations = iterations


class QuadratureFailureError(RuntimeError):
    """Adaptive quadrature could not reach the requested tolerance."""


class DimensionMismatchError(ValueError):
    """Two tables with incompatible support sizes were combined."""
