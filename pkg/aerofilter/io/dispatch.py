"""Format detection and dispatch between the PCD and CSV codecs."""

from __future__ import annotations

import pathlib
from enum import StrEnum
from typing import Optional, Union

from aerofilter.cloud import PointCloud
from aerofilter.exceptions.data import CloudFormatError

from .csv_cloud import read_csv_cloud, write_csv_cloud
from .pcd import read_pcd, read_pcd_header, write_pcd

__all__: list[str] = ["CloudFormat", "CLOUD_SUFFIXES", "detect_format", "read_cloud", "write_cloud"]

PathLike = Union[str, pathlib.Path]

CLOUD_SUFFIXES = (".pcd", ".csv")


class CloudFormat(StrEnum):
    """On-disk cloud encodings."""

    PCD_ASCII = "pcd-ascii"
    PCD_BINARY = "pcd-binary"
    CSV = "csv"


def detect_format(path: PathLike) -> CloudFormat:
    """
    Format of an existing file: PCD from its DATA line, CSV from the suffix.

    Raises
    ------
    CloudFormatError
        For an unknown suffix or an unreadable PCD header.
    """
    path = pathlib.Path(path)
    suffix = path.suffix.lower()
    if suffix == ".csv":
        return CloudFormat.CSV
    if suffix == ".pcd":
        return CloudFormat.PCD_BINARY if read_pcd_header(path).data == "binary" else CloudFormat.PCD_ASCII
    raise CloudFormatError(f"Unrecognised cloud file suffix {suffix!r}; expected one of {', '.join(CLOUD_SUFFIXES)}", path=path)


def _format_for_writing(path: pathlib.Path, fmt: Optional[CloudFormat | str]) -> CloudFormat:
    if fmt is not None:
        try:
            return CloudFormat(fmt)
        except ValueError:
            raise CloudFormatError(f"Unknown cloud format {fmt!r}; expected one of {', '.join(CloudFormat)}", path=path) from None
    suffix = path.suffix.lower()
    if suffix == ".csv":
        return CloudFormat.CSV
    if suffix == ".pcd":
        return CloudFormat.PCD_BINARY
    raise CloudFormatError(f"Cannot infer a cloud format from suffix {suffix!r}", path=path)


def read_cloud(path: PathLike, *, frame_id: Optional[str] = None, timestamp: Optional[float] = None) -> PointCloud:
    """Read a PCD or CSV cloud, choosing the codec by `detect_format`."""
    path = pathlib.Path(path)
    if detect_format(path) is CloudFormat.CSV:
        return read_csv_cloud(path, frame_id=frame_id, timestamp=timestamp)
    return read_pcd(path, frame_id=frame_id, timestamp=timestamp)


def write_cloud(cloud: PointCloud, path: PathLike, fmt: Optional[CloudFormat | str] = None) -> CloudFormat:
    """
    Write ``cloud``; ``fmt`` defaults from the suffix, with ``.pcd`` meaning binary.

    Returns
    -------
    CloudFormat
        The format actually written.
    """
    path = pathlib.Path(path)
    chosen = _format_for_writing(path, fmt)
    if chosen is CloudFormat.CSV:
        write_csv_cloud(cloud, path)
    else:
        write_pcd(cloud, path, binary=chosen is CloudFormat.PCD_BINARY)
    return chosen
