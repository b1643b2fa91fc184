# -*- coding: utf-8 -*-
"""Detailed logging formatter with frame context."""

import logging as logging_mod
import textwrap
from typing import Any, Literal, Mapping, Optional

# fmt: off
DEFAULT_FORMAT: str = (
    "%(asctime)s [%(levelname)-8s] [%(name)s] [%(frame_id)s/%(branch)s] %(message)s\n"
    "    (%(filename)s:%(lineno)d)"
)
# fmt: on


class DetailedFormatter(logging_mod.Formatter):
    """
    A logging formatter that provides detailed, multi-line output.

    Includes timestamp, level name, logger name, the frame and branch being
    processed, message, filename and line number. Multi-line messages,
    exception information and stack information are indented under the
    first line.

    Records that did not pass through a `ContextFilter` render the frame
    context as ``-``.
    """

    def __init__(
        self,
        fmt: Optional[str] = None,
        datefmt: Optional[str] = None,
        style: Literal["%", "{", "$"] = "%",
        validate: bool = True,
        *,
        defaults: Optional[Mapping[str, Any]] = None,
    ) -> None:
        merged_defaults: dict[str, Any] = {"frame_id": "-", "branch": "-"}
        if defaults:
            merged_defaults.update(defaults)
        super().__init__(
            fmt=fmt or DEFAULT_FORMAT,
            datefmt=datefmt,
            style=style,
            validate=validate,
            defaults=merged_defaults,
        )

    def format(self, record: logging_mod.LogRecord) -> str:
        """Format the specified record as text.

        Args
        ----
        record
            The log record to format.

        Returns
        -------
        str
            The formatted log record.
        """
        saved_exc_text = record.exc_text
        record.exc_text = None
        exc_info = record.exc_info
        stack_info = record.stack_info
        record.exc_info = None
        record.stack_info = None
        try:
            formatted = super().format(record)
        finally:
            record.exc_info = exc_info
            record.stack_info = stack_info
            record.exc_text = saved_exc_text
        formatted = self._indent_message_lines(formatted)
        if record.exc_info:
            if not record.exc_text:
                record.exc_text = self.formatException(record.exc_info)
        if record.exc_text:
            formatted = f"{formatted.rstrip()}\n{textwrap.indent(record.exc_text, '    ')}"
        if record.stack_info:
            formatted = f"{formatted.rstrip()}\n{textwrap.indent(self.formatStack(record.stack_info), '    ')}"
        return formatted

    @staticmethod
    def _indent_message_lines(formatted: str) -> str:
        lines = formatted.split("\n")
        if len(lines) <= 1:
            return formatted
        return "\n".join([lines[0]] + [line if line.startswith("    ") else textwrap.indent(line, "    ") for line in lines[1:]])
