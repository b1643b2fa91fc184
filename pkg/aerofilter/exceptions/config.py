"""Configuration-specific exception classes for the aerofilter library."""

from typing import Optional

from .base import ConfigurationError


class InvalidConfigError(ConfigurationError):
    """Raised when configuration values are invalid.

    Parameters
    ----------
    message : str
        Human readable description of the violation.
    parameter : Optional[str]
        Name of the offending parameter, exactly as spelled in the config document.
    interval : Optional[tuple[float, float]]
        The permitted closed interval, when the violation is a range violation.
    """

    def __init__(
        self,
        message: str,
        *,
        parameter: Optional[str] = None,
        interval: Optional[tuple[float, float]] = None,
    ) -> None:
        super().__init__(message)
        self.parameter = parameter
        self.interval = interval

    @classmethod
    def out_of_range(cls, parameter: str, value: object, interval: tuple[float, float]) -> "InvalidConfigError":
        """Build the error for a value outside its permitted interval."""
        low, high = interval
        return cls(
            f"{parameter} = {value!r} is outside its permitted interval [{low:g}, {high:g}]",
            parameter=parameter,
            interval=interval,
        )


class UnknownConfigKeyError(InvalidConfigError):
    """Raised when a configuration document contains a key that is not part of the schema."""

    def __init__(self, key_path: str) -> None:
        super().__init__(f"Unknown configuration key: {key_path}", parameter=key_path)
        self.key_path = key_path


class ConfigLoadError(ConfigurationError):
    """Raised when configuration loading fails."""


class ConfigValueError(ConfigurationError):
    """Raised when a configuration value cannot be coerced to the expected type."""


__all__ = [
    "InvalidConfigError",
    "UnknownConfigKeyError",
    "ConfigLoadError",
    "ConfigValueError",
]
