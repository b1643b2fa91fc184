"""CSV point files with a mandatory ``x,y,z,intensity`` header."""

from __future__ import annotations

import csv
import logging as logging_mod
import pathlib
from typing import Union

import numpy as np

from aerofilter.cloud import PointCloud
from aerofilter.exceptions.data import CloudDataError, CloudFormatError

from .pcd import REQUIRED_FIELDS

__all__: list[str] = ["read_csv_cloud", "write_csv_cloud"]

logger: logging_mod.Logger = logging_mod.getLogger(__name__)

PathLike = Union[str, pathlib.Path]


def read_csv_cloud(path: PathLike, *, frame_id: str | None = None, timestamp: float | None = None) -> PointCloud:
    """
    Read a CSV cloud; columns are located by header name, extra columns are ignored.

    Raises
    ------
    CloudFormatError
        If the header lacks a required column, a row is short or non-numeric,
        or a row violates the cloud invariants. The error names the data row.
    """
    path = pathlib.Path(path)
    try:
        with open(path, newline="", encoding="utf-8") as handle:
            reader = csv.reader(handle)
            header = [name.strip().lower() for name in next(reader, [])]
            missing = [name for name in REQUIRED_FIELDS if name not in header]
            if missing:
                raise CloudFormatError(f"CSV header lacks required column(s): {', '.join(missing)}", path=path)
            positions = [header.index(name) for name in REQUIRED_FIELDS]
            rows: list[list[float]] = []
            for row, record in enumerate(r for r in reader if r and any(cell.strip() for cell in r)):
                try:
                    rows.append([float(record[p]) for p in positions])
                except (IndexError, ValueError) as e:
                    raise CloudFormatError(f"Unreadable CSV row: {e}", path=path, row=row) from e
    except OSError as e:
        raise CloudFormatError(f"Cannot read CSV file: {e}", path=path) from e

    table = np.array(rows, dtype=np.float64).reshape(len(rows), 4)
    try:
        cloud = PointCloud.from_arrays(table[:, :3], table[:, 3], frame_id=path.stem if frame_id is None else frame_id, timestamp=timestamp)
    except CloudDataError as e:
        raise CloudFormatError(str(e), path=path, row=e.row) from e
    logger.debug("Read %d points from %s", len(cloud), path)
    return cloud


def write_csv_cloud(cloud: PointCloud, path: PathLike) -> None:
    """Write ``cloud`` with ``%.17g`` values, which round-trip float64 exactly.

    Raises
    ------
    CloudFormatError
        If the file cannot be written.
    """
    path = pathlib.Path(path)
    table = np.column_stack([cloud.xyz, cloud.intensity])
    try:
        with open(path, "w", newline="", encoding="utf-8") as handle:
            np.savetxt(handle, table, fmt="%.17g", delimiter=",", header=",".join(REQUIRED_FIELDS), comments="")
    except OSError as e:
        raise CloudFormatError(f"Cannot write CSV file: {e}", path=path) from e
    logger.debug("Wrote %d points to %s", len(cloud), path)
