"""
Reader and writer for PCD v0.7 files (ASCII and binary).

The reader accepts any field layout that carries ``x``, ``y``, ``z`` and
``intensity``; other fields are ignored. The writer always emits those four
fields as little-endian float32.
"""

from __future__ import annotations

import logging as logging_mod
import pathlib
from typing import BinaryIO, Union

import numpy as np
import numpy.typing as npt

from aerofilter.cloud import PointCloud
from aerofilter.exceptions.data import CloudDataError, CloudFormatError

__all__: list[str] = ["PcdHeader", "read_pcd_header", "read_pcd", "write_pcd", "REQUIRED_FIELDS"]

logger: logging_mod.Logger = logging_mod.getLogger(__name__)

PathLike = Union[str, pathlib.Path]

REQUIRED_FIELDS = ("x", "y", "z", "intensity")

_BASE_TYPES: dict[str, dict[int, str]] = {
    "F": {4: "f4", 8: "f8"},
    "U": {1: "u1", 2: "u2", 4: "u4", 8: "u8"},
    "I": {1: "i1", 2: "i2", 4: "i4", 8: "i8"},
}


class PcdHeader:
    """Parsed PCD header."""

    def __init__(self, fields: list[str], sizes: list[int], types: list[str], counts: list[int], points: int, data: str) -> None:
        self.fields = fields
        self.sizes = sizes
        self.types = types
        self.counts = counts
        self.points = points
        self.data = data

    def dtype(self, path: PathLike) -> np.dtype[np.void]:
        """Little-endian structured dtype of one record."""
        layout: list[tuple[str, str] | tuple[str, str, tuple[int]]] = []
        for name, size, kind, count in zip(self.fields, self.sizes, self.types, self.counts):
            code = _BASE_TYPES.get(kind, {}).get(size)
            if code is None:
                raise CloudFormatError(f"Unsupported PCD field type {kind}{size} for {name!r}", path=path)
            layout.append((name, "<" + code) if count == 1 else (name, "<" + code, (count,)))
        return np.dtype(layout)


def _parse_header(lines: list[str], path: PathLike) -> PcdHeader:
    header: dict[str, list[str]] = {}
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, *rest = line.split()
        header[key.upper()] = rest
    fields = header.get("FIELDS", [])
    if not fields:
        raise CloudFormatError("PCD header has no FIELDS line", path=path)
    try:
        sizes = [int(s) for s in header.get("SIZE", [])]
        types = [t.upper() for t in header.get("TYPE", [])]
        counts = [int(c) for c in header.get("COUNT", ["1"] * len(fields))]
        width = int(header.get("WIDTH", ["0"])[0])
        height = int(header.get("HEIGHT", ["1"])[0])
        points = int(header.get("POINTS", [str(width * height)])[0])
    except (ValueError, IndexError) as e:
        raise CloudFormatError(f"Malformed PCD header: {e}", path=path) from e
    if not len(sizes) == len(types) == len(counts) == len(fields):
        raise CloudFormatError("PCD FIELDS, SIZE, TYPE and COUNT lines disagree in length", path=path)
    data = header.get("DATA", [""])[0].lower()
    if data not in ("ascii", "binary"):
        raise CloudFormatError(f"Unsupported PCD DATA mode {data!r}", path=path)
    missing = [name for name in REQUIRED_FIELDS if name not in fields]
    if missing:
        raise CloudFormatError(f"PCD file lacks required field(s): {', '.join(missing)}", path=path)
    return PcdHeader(fields, sizes, types, counts, points, data)


def _read_header_lines(handle: BinaryIO, path: PathLike) -> list[str]:
    lines: list[str] = []
    while True:
        raw = handle.readline()
        if not raw:
            raise CloudFormatError("Unexpected end of file inside the PCD header", path=path)
        line = raw.decode("ascii", errors="replace")
        lines.append(line)
        if line.strip().upper().startswith("DATA"):
            return lines


def read_pcd_header(path: PathLike) -> PcdHeader:
    """Parse only the header of a PCD file.

    Raises
    ------
    CloudFormatError
        If the file cannot be opened or the header is malformed.
    """
    try:
        with open(path, "rb") as handle:
            return _parse_header(_read_header_lines(handle, path), path)
    except OSError as e:
        raise CloudFormatError(f"Cannot read PCD file: {e}", path=path) from e


def _records_from_ascii(text: str, header: PcdHeader, path: PathLike) -> npt.NDArray[np.float64]:
    columns = sum(header.counts)
    rows = [line.split() for line in text.splitlines() if line.strip()]
    for row, values in enumerate(rows):
        if len(values) != columns:
            raise CloudFormatError(f"Expected {columns} values, got {len(values)}", path=path, row=row)
    if len(rows) != header.points:
        raise CloudFormatError(f"Header announces {header.points} points, found {len(rows)}", path=path)
    try:
        return np.array(rows, dtype=np.float64).reshape(len(rows), columns)
    except ValueError as e:
        raise CloudFormatError(f"Non-numeric PCD value: {e}", path=path) from e


def _first_component(values: npt.NDArray[np.generic]) -> npt.NDArray[np.float64]:
    array = np.asarray(values, dtype=np.float64)
    return array[:, 0] if array.ndim > 1 else array


def read_pcd(path: PathLike, *, frame_id: str | None = None, timestamp: float | None = None) -> PointCloud:
    """
    Read a PCD file into a `PointCloud`.

    Parameters
    ----------
    path : str or pathlib.Path
        File to read.
    frame_id : str, optional
        Defaults to the file stem.
    timestamp : float, optional
        Attached to the cloud as-is.

    Raises
    ------
    CloudFormatError
        For I/O failures, unsupported layouts, truncated data or rows that
        violate the cloud invariants (the error names the row).
    """
    path = pathlib.Path(path)
    try:
        with open(path, "rb") as handle:
            header = _parse_header(_read_header_lines(handle, path), path)
            payload = handle.read()
    except OSError as e:
        raise CloudFormatError(f"Cannot read PCD file: {e}", path=path) from e

    if header.data == "ascii":
        table = _records_from_ascii(payload.decode("ascii", errors="replace"), header, path)
        dtype = header.dtype(path)
        offsets = np.cumsum([0] + header.counts[:-1])
        # Narrowed to the declared field type.
        columns = {name: table[:, offset].astype(dtype[name].base).astype(np.float64) for name, offset in zip(header.fields, offsets)}
    else:
        dtype = header.dtype(path)
        expected = header.points * dtype.itemsize
        if len(payload) < expected:
            raise CloudFormatError(f"Binary payload holds {len(payload)} bytes, {expected} expected", path=path)
        records = np.frombuffer(payload, dtype=dtype, count=header.points)
        columns = {name: _first_component(records[name]) for name in REQUIRED_FIELDS}

    xyz = np.column_stack([columns["x"], columns["y"], columns["z"]])
    try:
        cloud = PointCloud.from_arrays(xyz, columns["intensity"], frame_id=path.stem if frame_id is None else frame_id, timestamp=timestamp)
    except CloudDataError as e:
        raise CloudFormatError(str(e), path=path, row=e.row) from e
    logger.debug("Read %d points from %s (%s)", len(cloud), path, header.data)
    return cloud


def _header_text(count: int, data: str) -> str:
    return (
        "# .PCD v0.7 - Point Cloud Data file format\n"
        "VERSION 0.7\n"
        "FIELDS x y z intensity\n"
        "SIZE 4 4 4 4\n"
        "TYPE F F F F\n"
        "COUNT 1 1 1 1\n"
        f"WIDTH {count}\n"
        "HEIGHT 1\n"
        "VIEWPOINT 0 0 0 1 0 0 0\n"
        f"POINTS {count}\n"
        f"DATA {data}\n"
    )


def write_pcd(cloud: PointCloud, path: PathLike, *, binary: bool = True) -> None:
    """
    Write ``cloud`` as a PCD file with float32 ``x y z intensity`` fields.

    ASCII values are written with ``%.9g``, which round-trips float32.

    Raises
    ------
    CloudFormatError
        If the file cannot be written.
    """
    path = pathlib.Path(path)
    table = np.column_stack([cloud.xyz, cloud.intensity]).astype("<f4")
    try:
        with open(path, "wb") as handle:
            handle.write(_header_text(len(cloud), "binary" if binary else "ascii").encode("ascii"))
            if binary:
                handle.write(np.ascontiguousarray(table).tobytes())
            else:
                np.savetxt(handle, table, fmt="%.9g", delimiter=" ")
    except OSError as e:
        raise CloudFormatError(f"Cannot write PCD file: {e}", path=path) from e
    logger.debug("Wrote %d points to %s", len(cloud), path)
