"""Logging utilities for aerofilter."""

from .filters import ContextFilter, clear_log_context, get_log_context, set_log_context
from .formatters import DetailedFormatter
from .handlers import ConsoleHandler
from .setup import setup_logging

__all__: list[str] = [
    "DetailedFormatter",
    "ContextFilter",
    "ConsoleHandler",
    "setup_logging",
    "clear_log_context",
    "get_log_context",
    "set_log_context",
]
