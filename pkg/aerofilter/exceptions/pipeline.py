"""Exceptions raised by the frame orchestrator."""

from .base import AeroFilterError

__all__: list[str] = ["StreamError"]


class StreamError(AeroFilterError):
    """Raised when a frame stream is not ordered by timestamp."""
