"""Exception types shared across the package."""


class ScdError(Exception):
    """Base class for all package errors."""


class ConfigurationError(ScdError):
    """A parameter set violates its documented invariants."""


class DimensionError(ScdError):
    """An array does not have the shape or length an operation requires."""


class CapacityError(ScdError):
    """An operation would exceed a configured memory or cost guard."""


class DomainError(ScdError):
    """A frequency or cycle-frequency argument lies outside the valid band."""


class DataError(ScdError):
    """A file or byte stream does not match its declared format."""
