"""Partition results and branch names shared by the filter stages."""

from enum import StrEnum
from typing import NamedTuple

from aerofilter.cloud import PointCloud

__all__: list[str] = ["Branch", "StageResult"]


class Branch(StrEnum):
    """The two range segments a frame is filtered in."""

    CLOSE = "close"
    LONG = "long"


class StageResult(NamedTuple):
    """Points a filter kept and rejected; together they are its input."""

    kept: PointCloud
    rejected: PointCloud
