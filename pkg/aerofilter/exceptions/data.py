"""Exceptions raised while ingesting or validating point data."""

import pathlib
from typing import List, Optional, Union

from .base import DataError

__all__: list[str] = ["CloudDataError", "CloudFormatError", "LabelError"]


class CloudDataError(DataError):
    """Raised when point data violates the cloud invariants.

    Parameters
    ----------
    message : str
        Description of the violation.
    row : Optional[int]
        Zero-based row of the first offending point, when known.
    """

    def __init__(self, message: str, *, row: Optional[int] = None) -> None:
        super().__init__(message)
        self.row = row


class CloudFormatError(CloudDataError):
    """Raised when a cloud file cannot be parsed or written.

    Parameters
    ----------
    message : str
        Description of the failure.
    path : Optional[Union[str, pathlib.Path]]
        File the failure relates to.
    row : Optional[int]
        Zero-based data row, when the failure is tied to one.
    """

    def __init__(
        self,
        message: str,
        *,
        path: Optional[Union[str, pathlib.Path]] = None,
        row: Optional[int] = None,
    ) -> None:
        super().__init__(message, row=row)
        self.path = str(path) if path is not None else None

    def __str__(self) -> str:
        """Return the message with file and row context if available."""
        base_message = super().__str__()
        context_parts: List[str] = []
        if self.path:
            context_parts.append(f"file: {self.path}")
        if self.row is not None:
            context_parts.append(f"row: {self.row}")
        if context_parts:
            return f"{base_message} ({', '.join(context_parts)})"
        return base_message


class LabelError(DataError):
    """Raised when ground-truth labels do not line up with their cloud."""
