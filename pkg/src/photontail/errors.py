"""Exception types shared across the package."""


class PhotontailError(Exception):
    """Base class for all package-specific errors."""


class ConfigurationError(PhotontailError, ValueError):
    """Invalid configuration value, unsupported rule order, or size overflow."""


class DomainError(PhotontailError, ValueError):
    """Argument outside the mathematical domain of an operation (e.g. k = 0)."""


class SolverError(PhotontailError, RuntimeError):
    """An eigensolve or linear solve failed to converge."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class AssemblyError(SolverError):
    """Internal consistency check failed while assembling an operator."""


class NumericalError(PhotontailError, RuntimeError):
    """A quadrature or refinement loop failed to converge; carries the last
    estimate and the observed change between refinement levels."""

    def __init__(self, message, estimate=None, error_bound=None):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


class DegenerateGroundStateError(PhotontailError, RuntimeError):
    """The two lowest eigenvalues coincide within the degeneracy threshold,
    so the ground state is not unique up to a phase.  Carries both values."""

    def __init__(self, e0, e1, threshold):
        super().__init__(
            f"ground state is degenerate: E0={e0!r}, E1={e1!r} "
            f"(gap {e1 - e0:.3e} below threshold {threshold:.3e})"
        )
        self.e0 = e0
        self.e1 = e1
        self.threshold = threshold
