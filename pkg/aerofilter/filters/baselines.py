"""
Classical outlier filters kept for comparison with the pipeline.

- ROR: fewer than ``min_neighbors`` within ``search_radius``.
- SOR: mean k-NN distance above ``mu + m * sigma`` of all points.
- DROR: ROR with radius ``max(min_search_radius, beta * range * angular_resolution)``.
- DSOR: SOR with its threshold scaled by the DROR radius growth factor.
- LIOR: intensity below a threshold within a range bound.
- LIDROR: LIOR candidates that also fail the DROR neighbour test.
"""

from __future__ import annotations

import logging as logging_mod
from dataclasses import dataclass
from enum import StrEnum
from typing import Callable, Optional

import numpy as np

from aerofilter.cloud import PointCloud, build_index
from aerofilter.exceptions.base import ParameterError
from aerofilter.types import BoolArray, FloatArray

from .result import StageResult

__all__: list[str] = ["BaselineVariant", "BaselineConfig", "baseline_filter", "dror_radii"]

logger: logging_mod.Logger = logging_mod.getLogger(__name__)


class BaselineVariant(StrEnum):
    """Available baseline filters."""

    ROR = "ROR"
    SOR = "SOR"
    DROR = "DROR"
    DSOR = "DSOR"
    LIOR = "LIOR"
    LIDROR = "LIDROR"


_NEEDS_ANGULAR_RESOLUTION = frozenset({BaselineVariant.DROR, BaselineVariant.DSOR, BaselineVariant.LIDROR})


@dataclass(frozen=True)
class BaselineConfig:
    """Baseline selection and its parameters.

    ``variant`` may be given as a string; unknown names raise `ParameterError`.
    """

    variant: BaselineVariant
    search_radius: float = 0.1
    min_neighbors: int = 3
    k: int = 6
    std_multiplier: float = 1.0
    radius_multiplier: float = 3.0
    min_search_radius: float = 0.04
    angular_resolution: Optional[float] = None
    intensity_threshold: float = 2.0
    intensity_range_bound: float = 30.0
    workers: int = -1

    def __post_init__(self) -> None:
        try:
            variant = BaselineVariant(str(self.variant).upper())
        except ValueError:
            raise ParameterError(f"Unknown baseline variant {self.variant!r}; expected one of {[v.value for v in BaselineVariant]}") from None
        object.__setattr__(self, "variant", variant)
        for name in ("search_radius", "min_search_radius", "radius_multiplier", "intensity_range_bound"):
            if not getattr(self, name) > 0:
                raise ParameterError(f"{name} must be positive, got {getattr(self, name)}")
        if self.min_neighbors < 0 or self.k < 1:
            raise ParameterError(f"min_neighbors must be >= 0 and k >= 1, got {self.min_neighbors} and {self.k}")
        if self.std_multiplier < 0 or self.intensity_threshold < 0:
            raise ParameterError("std_multiplier and intensity_threshold must be non-negative")
        if variant in _NEEDS_ANGULAR_RESOLUTION and not (self.angular_resolution is not None and self.angular_resolution > 0):
            raise ParameterError(f"{variant} requires a positive angular_resolution in radians")


def dror_radii(ranges: FloatArray, cfg: BaselineConfig) -> FloatArray:
    """Per-point DROR search radius."""
    resolution = cfg.angular_resolution or 0.0
    return np.maximum(cfg.min_search_radius, cfg.radius_multiplier * ranges * resolution)


def _ror(cloud: PointCloud, cfg: BaselineConfig) -> BoolArray:
    counts = build_index(cloud, 3, workers=cfg.workers).neighbor_counts(cfg.search_radius)
    return counts < cfg.min_neighbors


def _mean_knn_distances(cloud: PointCloud, cfg: BaselineConfig) -> FloatArray:
    _, distances = build_index(cloud, 3, workers=cfg.workers).knn_table(cfg.k)
    return distances.mean(axis=1)


def _sor_bound(means: FloatArray, cfg: BaselineConfig) -> float:
    sigma = float(means.std(ddof=1)) if means.shape[0] > 1 else 0.0
    return float(means.mean()) + cfg.std_multiplier * sigma


def _sor(cloud: PointCloud, cfg: BaselineConfig) -> BoolArray:
    if len(cloud) < 2:
        return np.zeros(len(cloud), dtype=bool)
    means = _mean_knn_distances(cloud, cfg)
    return means > _sor_bound(means, cfg)


def _dror(cloud: PointCloud, cfg: BaselineConfig) -> BoolArray:
    counts = build_index(cloud, 3, workers=cfg.workers).neighbor_counts(dror_radii(cloud.ranges(), cfg))
    return counts < cfg.min_neighbors


def _dsor(cloud: PointCloud, cfg: BaselineConfig) -> BoolArray:
    if len(cloud) < 2:
        return np.zeros(len(cloud), dtype=bool)
    means = _mean_knn_distances(cloud, cfg)
    growth = np.maximum(1.0, dror_radii(cloud.ranges(), cfg) / cfg.min_search_radius)
    return means > _sor_bound(means, cfg) * growth


def _lior(cloud: PointCloud, cfg: BaselineConfig) -> BoolArray:
    return (cloud.intensity < cfg.intensity_threshold) & (cloud.ranges() <= cfg.intensity_range_bound)


def _lidror(cloud: PointCloud, cfg: BaselineConfig) -> BoolArray:
    return _lior(cloud, cfg) & _dror(cloud, cfg)


_VARIANTS: dict[BaselineVariant, Callable[[PointCloud, BaselineConfig], BoolArray]] = {
    BaselineVariant.ROR: _ror,
    BaselineVariant.SOR: _sor,
    BaselineVariant.DROR: _dror,
    BaselineVariant.DSOR: _dsor,
    BaselineVariant.LIOR: _lior,
    BaselineVariant.LIDROR: _lidror,
}


def baseline_filter(cloud: PointCloud, cfg: BaselineConfig) -> StageResult:
    """Run the baseline selected by ``cfg.variant``."""
    if len(cloud) == 0:
        return StageResult(cloud, cloud)
    mask = _VARIANTS[cfg.variant](cloud, cfg)
    kept, rejected = cloud.split(mask)
    logger.debug("%s rejected %d of %d points", cfg.variant, len(rejected), len(cloud))
    return StageResult(kept, rejected)
