"""Exception types raised across the package."""


class BoxwellError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(BoxwellError, ValueError):
    """A physical or numerical parameter is outside its admissible range."""


class DomainError(BoxwellError, ValueError):
    """An index or argument lies outside the domain of an operation."""


class ResolutionError(BoxwellError, ValueError):
    """A quadrature rule has too few points to resolve the requested integrand."""


class ConvergenceError(BoxwellError, RuntimeError):
    """The eigensolver failed to reach its tolerance within the sweep budget."""

    def __init__(self, message: str, off_diag_norm: float, sweeps: int):
        super().__init__(message)
        self.off_diag_norm = off_diag_norm
        self.sweeps = sweeps
