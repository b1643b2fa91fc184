"""``index,label`` sidecar files holding per-point ground truth."""

from __future__ import annotations

import csv
import pathlib
from typing import Union

import numpy as np
import numpy.typing as npt

from aerofilter.evaluation.metrics import Label
from aerofilter.exceptions.data import CloudFormatError, LabelError

__all__: list[str] = ["read_labels", "write_labels"]

PathLike = Union[str, pathlib.Path]

_HEADER = ["index", "label"]


def write_labels(labels: npt.ArrayLike, path: PathLike) -> None:
    """Write one ``index,label`` row per point, labels spelled ``environment``/``aerosol``."""
    path = pathlib.Path(path)
    values = np.asarray(labels, dtype=np.int8).reshape(-1)
    try:
        with open(path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(_HEADER)
            writer.writerows((i, Label(int(v)).text) for i, v in enumerate(values))
    except OSError as e:
        raise CloudFormatError(f"Cannot write label file: {e}", path=path) from e


def read_labels(path: PathLike, expected_count: int | None = None) -> npt.NDArray[np.int8]:
    """
    Read a label sidecar into an array ordered by point index.

    Raises
    ------
    LabelError
        If indices are not exactly ``0 .. N-1``, a label is unknown or the
        count differs from ``expected_count``.
    CloudFormatError
        If the file cannot be read or lacks the header.
    """
    path = pathlib.Path(path)
    try:
        with open(path, newline="", encoding="utf-8") as handle:
            reader = csv.reader(handle)
            header = [name.strip().lower() for name in next(reader, [])]
            if header[:2] != _HEADER:
                raise CloudFormatError("Label file must start with an 'index,label' header", path=path)
            entries: dict[int, Label] = {}
            for row, record in enumerate(r for r in reader if r):
                try:
                    index = int(record[0])
                except (IndexError, ValueError) as e:
                    raise CloudFormatError(f"Unreadable label row: {e}", path=path, row=row) from e
                if index in entries:
                    raise LabelError(f"Point index {index} is labelled twice in {path}")
                entries[index] = Label.from_text(record[1] if len(record) > 1 else "")
    except OSError as e:
        raise CloudFormatError(f"Cannot read label file: {e}", path=path) from e

    count = len(entries)
    if sorted(entries) != list(range(count)):
        raise LabelError(f"Label indices in {path} are not exactly 0..{count - 1}")
    if expected_count is not None and count != expected_count:
        raise LabelError(f"{path} holds {count} labels for {expected_count} points")
    return np.array([int(entries[i]) for i in range(count)], dtype=np.int8)
