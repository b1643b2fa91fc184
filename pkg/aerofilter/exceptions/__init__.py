"""
Exceptions for the aerofilter library.

This module re-exports all exception classes from the aerofilter.exceptions
submodules. Import exceptions from here rather than from individual submodules.

The exceptions are organized into categories:
- Base exceptions: core hierarchy rooted at AeroFilterError
- Config exceptions: configuration loading and validation errors
- Data exceptions: malformed clouds, files and labels
- Filter exceptions: stage-level failures the pipeline degrades around
- Pipeline exceptions: stream ordering errors
"""

from .base import AeroFilterError, ConfigurationError, DataError, ParameterError
from .config import (
    ConfigLoadError,
    ConfigValueError,
    InvalidConfigError,
    UnknownConfigKeyError,
)
from .data import CloudDataError, CloudFormatError, LabelError
from .filters import FilterError, NeighborStatsError, WeibullFitError
from .pipeline import StreamError

__all__: list[str] = [
    # Base exceptions
    "AeroFilterError",
    "ConfigurationError",
    "ParameterError",
    "DataError",
    # Config exceptions
    "InvalidConfigError",
    "UnknownConfigKeyError",
    "ConfigLoadError",
    "ConfigValueError",
    # Data exceptions
    "CloudDataError",
    "CloudFormatError",
    "LabelError",
    # Filter exceptions
    "FilterError",
    "WeibullFitError",
    "NeighborStatsError",
    # Pipeline exceptions
    "StreamError",
]
