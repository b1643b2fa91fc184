"""
Dynamic onboard statistical cluster outlier removal (DOSCOR).

Phase 1 drops points with too few neighbours inside a small query ball.
Phase 2 compares each survivor's mean neighbour distance against a
threshold that grows linearly with the survivor's range from the sensor:

    s_th = mu + sigma * c_th
    d_th(i) = s_th * range_i * r_th

``mu`` and ``sigma`` are taken over the Phase 1 survivors only.
"""

from __future__ import annotations

import logging as logging_mod
from dataclasses import dataclass
from enum import StrEnum
from typing import NamedTuple, Optional

import numpy as np

from aerofilter.cloud import PointCloud, SpatialIndex, build_index
from aerofilter.exceptions.base import ParameterError
from aerofilter.exceptions.filters import NeighborStatsError
from aerofilter.types import BoolArray, FloatArray, IndexArray

__all__: list[str] = [
    "DoscorConfig",
    "DoscorStatistic",
    "NeighborStats",
    "DoscorResult",
    "QUERY_RADIUS_DEFAULT",
    "neighbor_stats",
    "static_threshold",
    "dynamic_thresholds",
    "doscor_filter",
]

logger: logging_mod.Logger = logging_mod.getLogger(__name__)

QUERY_RADIUS_DEFAULT = 0.05


class DoscorStatistic(StrEnum):
    """What the global ``mu`` and ``sigma`` are taken over."""

    POINT_MEAN = "point_mean"
    PAIRWISE = "pairwise"


@dataclass(frozen=True)
class DoscorConfig:
    """DOSCOR parameters.

    Parameters
    ----------
    query_radius : float
        Neighbour ball radius in metres.
    k_min : int
        Points with ``count <= k_min`` neighbours fail Phase 1.
    c_th : float
        Weight of ``sigma`` in the global threshold.
    r_th : float
        Range scaling of the dynamic threshold.
    statistic : DoscorStatistic
        ``point_mean`` takes ``mu``/``sigma`` over per-point mean distances,
        ``pairwise`` over every survivor-to-neighbour distance.
    workers : int
        Threads for the neighbour queries.
    """

    query_radius: float = QUERY_RADIUS_DEFAULT
    k_min: int = 6
    c_th: float = 0.4
    r_th: float = 0.45
    statistic: DoscorStatistic = DoscorStatistic.POINT_MEAN
    workers: int = -1

    def __post_init__(self) -> None:
        if not self.query_radius > 0:
            raise ParameterError(f"query_radius must be positive, got {self.query_radius}")
        if isinstance(self.k_min, bool) or not isinstance(self.k_min, int) or self.k_min < 0:
            raise ParameterError(f"k_min must be a non-negative integer, got {self.k_min!r}")
        if self.c_th < 0:
            raise ParameterError(f"c_th must be non-negative, got {self.c_th}")
        if not self.r_th > 0:
            raise ParameterError(f"r_th must be positive, got {self.r_th}")
        object.__setattr__(self, "statistic", DoscorStatistic(self.statistic))


@dataclass(frozen=True)
class NeighborStats:
    """Per-point neighbourhood figures and the survivors' global statistics.

    ``mean_distances`` is NaN for points without neighbours. ``mu`` and
    ``sigma`` are ``None`` when fewer than two points survive Phase 1.
    """

    counts: IndexArray
    mean_distances: FloatArray
    survivors: BoolArray
    mu: Optional[float]
    sigma: Optional[float]

    @property
    def survivor_count(self) -> int:
        """Number of points passing Phase 1."""
        return int(np.count_nonzero(self.survivors))


class DoscorResult(NamedTuple):
    """Outcome of `doscor_filter`."""

    kept: PointCloud
    rejected: PointCloud
    phase1_rejected: int
    phase2_rejected: int
    s_th: Optional[float]
    degraded: bool = False
    error: Optional[str] = None


def neighbor_stats(cloud: PointCloud, cfg: DoscorConfig, *, strict: bool = True, index: Optional[SpatialIndex] = None) -> NeighborStats:
    """Neighbour counts and mean distances within ``cfg.query_radius``, plus survivor ``mu``/``sigma``.

    ``sigma`` is the sample standard deviation (``n - 1`` denominator).

    Parameters
    ----------
    cloud : PointCloud
        Points to analyse.
    cfg : DoscorConfig
        Radius, ``k_min`` and statistic.
    strict : bool
        Raise instead of returning ``mu = sigma = None`` when fewer than two
        points survive.
    index : SpatialIndex, optional
        A prebuilt 3D index over ``cloud``.

    Raises
    ------
    NeighborStatsError
        If ``strict`` and fewer than two points survive Phase 1.
    """
    if index is None:
        index = build_index(cloud, 3, workers=cfg.workers)
    table = index.neighbor_table(cfg.query_radius)
    counts = table.counts
    means = table.mean_distances()
    survivors = counts > cfg.k_min
    n_survivors = int(np.count_nonzero(survivors))
    if n_survivors < 2:
        if strict:
            raise NeighborStatsError(f"Only {n_survivors} of {len(cloud)} points have more than {cfg.k_min} neighbours")
        return NeighborStats(counts, means, survivors, None, None)
    if cfg.statistic is DoscorStatistic.PAIRWISE:
        rows = np.repeat(survivors, counts)
        sample = table.distances[rows]
    else:
        sample = means[survivors]
    mu = float(sample.mean())
    sigma = float(sample.std(ddof=1))
    return NeighborStats(counts, means, survivors, mu, sigma)


def static_threshold(stats: NeighborStats, cfg: DoscorConfig) -> float:
    """Global distance threshold ``mu + sigma * c_th``.

    Raises
    ------
    NeighborStatsError
        If ``stats`` carries no global statistics.
    """
    if stats.mu is None or stats.sigma is None:
        raise NeighborStatsError("Neighbour statistics have no global mu/sigma")
    return stats.mu + stats.sigma * cfg.c_th


def dynamic_thresholds(stats: NeighborStats, ranges: FloatArray, cfg: DoscorConfig) -> FloatArray:
    """Per-point threshold ``s_th * range_i * r_th``."""
    return static_threshold(stats, cfg) * np.asarray(ranges, dtype=np.float64) * cfg.r_th


def doscor_filter(cloud: PointCloud, cfg: DoscorConfig, *, index: Optional[SpatialIndex] = None) -> DoscorResult:
    """Two-phase DOSCOR rejection.

    A survivor is rejected in Phase 2 when its mean neighbour distance
    exceeds its dynamic threshold. When fewer than two points survive Phase 1
    the whole cloud is passed through and the result is flagged ``degraded``.
    """
    if len(cloud) == 0:
        return DoscorResult(cloud, cloud, 0, 0, None)
    stats = neighbor_stats(cloud, cfg, strict=False, index=index)
    if stats.mu is None:
        message = f"{stats.survivor_count} of {len(cloud)} points survive the neighbour pre-filter"
        logger.warning("DOSCOR passing frame through: %s", message)
        return DoscorResult(cloud, cloud.subset(np.zeros(len(cloud), dtype=bool)), 0, 0, None, degraded=True, error=message)
    s_th = static_threshold(stats, cfg)
    thresholds = s_th * cloud.ranges() * cfg.r_th
    phase2 = stats.survivors & (stats.mean_distances > thresholds)
    rejected_mask = ~stats.survivors | phase2
    phase1_count = len(cloud) - stats.survivor_count
    phase2_count = int(np.count_nonzero(phase2))
    logger.debug("DOSCOR s_th=%.5f: phase 1 rejected %d, phase 2 rejected %d", s_th, phase1_count, phase2_count)
    kept, rejected = cloud.split(rejected_mask)
    return DoscorResult(kept, rejected, phase1_count, phase2_count, s_th)
