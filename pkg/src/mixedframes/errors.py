"""Exception types shared across the package."""


class NormalizationError(ValueError):
    """A probability weight vector or density failed its normalization check."""


class DomainError(ValueError):
    """An argument is outside the domain an operation supports."""


class GridMismatchError(ValueError):
    """Two grid-based values do not live on the same grid."""


class QuadratureError(RuntimeError):
    """A numerical integration did not converge to the requested tolerance."""


class NumericError(RuntimeError):
    """A numerical kernel (e.g. a matrix exponential) failed to converge."""


class ResourceLimitError(RuntimeError):
    """An operation would exceed a configured size cap."""
