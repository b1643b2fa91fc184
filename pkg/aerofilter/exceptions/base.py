"""Base exception classes for the aerofilter library."""

__all__: list[str] = [
    "AeroFilterError",
    "ConfigurationError",
    "ParameterError",
    "DataError",
]


class AeroFilterError(Exception):
    """Base exception for all aerofilter errors."""


class ConfigurationError(AeroFilterError):
    """Base exception for configuration-related errors."""


class ParameterError(AeroFilterError, ValueError):
    """Raised when an operation receives an argument outside its domain.

    Examples are a non-positive search radius, ``k = 0`` for a nearest-neighbour
    query or a probability outside ``[0, 1)``.
    """


class DataError(AeroFilterError):
    """Base exception for malformed input data (clouds, labels, files)."""
