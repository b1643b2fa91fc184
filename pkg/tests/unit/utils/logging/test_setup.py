from __future__ import annotations

import io
import logging as logging_mod
import sys
from unittest.mock import MagicMock, patch

from aerofilter.utils.logging import ContextFilter, DetailedFormatter, set_log_context
from aerofilter.utils.logging.setup import setup_logging

DEFAULT_LOG_LEVEL = logging_mod.WARNING


@patch("aerofilter.utils.logging.setup._logger")
@patch("aerofilter.utils.logging.setup.ConsoleHandler")
@patch("aerofilter.utils.logging.setup.DetailedFormatter")
def test_setup_logging_default(mock_formatter_cls: MagicMock, mock_handler_cls: MagicMock, mock_logger: MagicMock) -> None:
    """Test setup_logging with default parameters."""
    mock_logger.handlers = []
    mock_logger.reset_mock()
    mock_logger.hasHandlers.return_value = False
    mock_handler_instance = MagicMock(spec=logging_mod.Handler)
    mock_formatter_instance = MagicMock(spec=logging_mod.Formatter)
    mock_handler_cls.return_value = mock_handler_instance
    mock_formatter_cls.return_value = mock_formatter_instance

    setup_logging()

    mock_logger.setLevel.assert_called_once_with(DEFAULT_LOG_LEVEL)
    mock_handler_cls.assert_called_once_with(sys.stderr)
    mock_formatter_cls.assert_called_once_with()
    mock_handler_instance.setFormatter.assert_called_once_with(mock_formatter_instance)
    mock_logger.addHandler.assert_called_once_with(mock_handler_instance)
    assert mock_logger.propagate is False


@patch("aerofilter.utils.logging.setup._logger")
def test_setup_logging_clears_existing_handlers(mock_logger: MagicMock) -> None:
    """Test that previously attached handlers are removed."""
    existing = MagicMock(spec=logging_mod.Handler)
    mock_logger.handlers = [existing]
    mock_logger.hasHandlers.return_value = True

    setup_logging(level="DEBUG", handlers=[logging_mod.NullHandler()])

    assert existing not in mock_logger.handlers
    mock_logger.setLevel.assert_called_once_with("DEBUG")


def test_custom_handler_gets_context_filter_and_formatter() -> None:
    """Test that custom handlers receive a ContextFilter and the formatter."""
    handler = logging_mod.StreamHandler(io.StringIO())
    formatter = logging_mod.Formatter("%(frame_id)s %(message)s")
    try:
        setup_logging(level=logging_mod.INFO, handlers=[handler], formatter=formatter)
        assert handler.formatter is formatter
        assert sum(isinstance(f, ContextFilter) for f in handler.filters) == 1
        setup_logging(level=logging_mod.INFO, handlers=[handler], formatter=formatter)
        assert sum(isinstance(f, ContextFilter) for f in handler.filters) == 1
    finally:
        logging_mod.getLogger("aerofilter").handlers.clear()
        logging_mod.getLogger("aerofilter").propagate = True


def test_records_carry_frame_context() -> None:
    """Test end to end that records are rendered with the current frame."""
    stream = io.StringIO()
    handler = logging_mod.StreamHandler(stream)
    try:
        setup_logging(level=logging_mod.INFO, handlers=[handler], formatter=DetailedFormatter())
        set_log_context("frame_id", "frame_000042")
        logging_mod.getLogger("aerofilter.pipeline").info("filtered")
        logging_mod.getLogger("aerofilter.pipeline").debug("hidden")
    finally:
        logging_mod.getLogger("aerofilter").handlers.clear()
        logging_mod.getLogger("aerofilter").propagate = True
    output = stream.getvalue()
    assert "[frame_000042/-] filtered" in output
    assert "hidden" not in output
