"""Exception types shared across the package."""


class QrdynError(Exception):
    """Base class for all library errors."""


class InvalidParameter(QrdynError):
    """An argument is outside the domain of the operation."""


class NumericalFailure(QrdynError):
    """A computed quantity failed its residual check."""


class ResourceLimit(QrdynError):
    """The request would exceed a hard size/depth limit."""


class NoBasin(QrdynError):
    """The map has no non-repelling fixed ray, hence no basin interval."""
