# -*- coding: utf-8 -*-
"""Custom logging handlers."""

from __future__ import annotations

import logging as logging_mod
import sys
from typing import IO, Optional

from .filters import ContextFilter

_StreamHandlerBase = logging_mod.StreamHandler[IO[str]]


class ConsoleHandler(_StreamHandlerBase):
    """
    A stream handler (stderr by default) that carries a `ContextFilter`.

    Records written through this handler always have ``frame_id`` and
    ``branch`` attributes, so formatters referencing them never fail.
    """

    def __init__(self, stream: Optional[IO[str]] = None) -> None:
        """
        Initialize the handler.

        Parameters
        ----------
        stream : Optional[IO[str]], optional
            The stream to write log records to. Defaults to `sys.stderr`.
        """
        super().__init__(stream or sys.stderr)
        self.addFilter(ContextFilter())
