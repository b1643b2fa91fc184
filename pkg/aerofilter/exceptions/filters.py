"""Exceptions raised by individual filtering stages."""

from .base import AeroFilterError

__all__: list[str] = ["FilterError", "WeibullFitError", "NeighborStatsError"]


class FilterError(AeroFilterError):
    """Base exception for stage-level failures.

    The pipeline never lets these escape a frame: the failing stage runs as
    pass-through and the frame report is flagged.
    """


class WeibullFitError(FilterError):
    """Raised when the intensity sample cannot support a Weibull fit.

    Callers keep the previous intensity threshold when they see this error.
    """


class NeighborStatsError(FilterError):
    """Raised when fewer than two points survive the neighbour-count pre-filter.

    Callers pass the frame through DOSCOR unfiltered when they see this error.
    """
