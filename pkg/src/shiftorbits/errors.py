"""Exception types shared across the package."""


class ShiftOrbitsError(ValueError):
    """Base class for all package-specific errors."""


class InvalidWeightError(ShiftOrbitsError):
    """A weight family produced a non-finite log-weight."""


class IndexRangeError(ShiftOrbitsError):
    """An index (or shifted index) left the representable int64 range."""


class UndefinedNormError(ShiftOrbitsError):
    """Norm or log-norm requested for the zero vector."""
