"""Radius outlier removal on the XY projection of a cloud."""

from __future__ import annotations

import logging as logging_mod
from dataclasses import dataclass
from typing import Optional

from aerofilter.cloud import PointCloud, SpatialIndex, build_index
from aerofilter.exceptions.base import ParameterError

from .result import StageResult

__all__: list[str] = ["Ror2dConfig", "ror2d_filter"]

logger: logging_mod.Logger = logging_mod.getLogger(__name__)


@dataclass(frozen=True)
class Ror2dConfig:
    """Neighbour radius ``r_nn`` in metres and the minimum acceptable neighbour count ``k_nn``."""

    r_nn: float = 0.15
    k_nn: int = 6
    workers: int = -1

    def __post_init__(self) -> None:
        if not self.r_nn > 0:
            raise ParameterError(f"r_nn must be positive, got {self.r_nn}")
        if isinstance(self.k_nn, bool) or not isinstance(self.k_nn, int) or self.k_nn < 0:
            raise ParameterError(f"k_nn must be a non-negative integer, got {self.k_nn!r}")


def ror2d_filter(cloud: PointCloud, cfg: Ror2dConfig, *, index: Optional[SpatialIndex] = None) -> StageResult:
    """Reject points with fewer than ``k_nn`` XY neighbours within ``r_nn``.

    Only the query is two-dimensional; kept points retain their height.
    """
    if index is None:
        index = build_index(cloud, 2, workers=cfg.workers)
    elif index.dims != 2:
        raise ParameterError(f"ror2d_filter needs a 2D index, got {index.dims}D")
    counts = index.neighbor_counts(cfg.r_nn, limit=cfg.k_nn)
    kept, rejected = cloud.split(counts < cfg.k_nn)
    logger.debug("2D ROR r_nn=%.3f k_nn=%d rejected %d of %d", cfg.r_nn, cfg.k_nn, len(rejected), len(cloud))
    return StageResult(kept, rejected)
