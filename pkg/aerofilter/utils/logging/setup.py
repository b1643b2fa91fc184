# -*- coding: utf-8 -*-
"""Logging setup utilities for the aerofilter library."""

import logging as logging_mod
import sys
from typing import List, Optional, Union

from .filters import ContextFilter
from .formatters import DetailedFormatter
from .handlers import ConsoleHandler

_logger: logging_mod.Logger = logging_mod.getLogger("aerofilter")


def setup_logging(
    level: Union[int, str] = logging_mod.WARNING,
    handlers: Optional[List[logging_mod.Handler]] = None,
    formatter: Optional[logging_mod.Formatter] = None,
) -> None:
    """Configure logging for the aerofilter library.

    Sets the logging level for the 'aerofilter' logger and adds the given
    handlers. If no handlers are provided, a ConsoleHandler writing to stderr
    is added. A DetailedFormatter is applied to all handlers unless a specific
    formatter is provided. Every handler receives a ContextFilter so records
    carry the frame and branch being processed.

    Note
    ----
    This function removes any previously configured handlers
    on the 'aerofilter' logger before adding the new ones.

    Args
    ----
    level
        The minimum logging level for the 'aerofilter' logger.
        Can be an integer (e.g., logging.DEBUG) or a string name
        (e.g., "DEBUG", "INFO", "WARNING"). Defaults to logging.WARNING.
    handlers
        An optional list of logging handler instances to add
        to the 'aerofilter' logger. If None or empty, a default
        ConsoleHandler(sys.stderr) will be added.
    formatter
        An optional logging formatter instance to apply to the handlers.
        If None, a default DetailedFormatter will be used.

    Examples
    --------
    >>> import logging
    >>> from aerofilter.utils.logging import setup_logging
    >>> setup_logging(level=logging.INFO)
    >>> logging.getLogger("aerofilter.pipeline").info("frame done")
    """
    log_formatter = formatter if formatter is not None else DetailedFormatter()

    # Remove existing handlers to avoid duplication if called multiple times
    if _logger.hasHandlers():
        _logger.handlers.clear()

    _logger.setLevel(level)

    if not handlers:
        default_handler = ConsoleHandler(sys.stderr)
        default_handler.setFormatter(log_formatter)
        _logger.addHandler(default_handler)
    else:
        for handler in handlers:
            handler.setFormatter(log_formatter)
            if not any(isinstance(f, ContextFilter) for f in handler.filters):
                handler.addFilter(ContextFilter())
            _logger.addHandler(handler)

    _logger.propagate = False
