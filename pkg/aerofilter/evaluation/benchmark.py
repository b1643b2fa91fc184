"""Latency benchmark of `process_frame` over standard scenes."""

from __future__ import annotations

import logging as logging_mod
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from aerofilter.cloud import PointCloud
from aerofilter.config import PipelineConfig
from aerofilter.exceptions.base import ParameterError
from aerofilter.pipeline import PipelineState, process_frame
from aerofilter.types import JsonObject

from .scene import standard_scene

__all__: list[str] = ["LatencyRow", "MIN_REPETITIONS", "benchmark"]

logger: logging_mod.Logger = logging_mod.getLogger(__name__)

MIN_REPETITIONS = 10


@dataclass(frozen=True)
class LatencyRow:
    """End-to-end latency of one workload size."""

    size: int
    median_ms: float
    p95_ms: float
    hz: float

    def to_dict(self) -> JsonObject:
        return {"size": self.size, "median_ms": self.median_ms, "p95_ms": self.p95_ms, "hz": self.hz}


def _time_frame(cloud: PointCloud, cfg: PipelineConfig) -> float:
    state = PipelineState.initial(cfg)
    start = time.perf_counter()
    process_frame(cloud, cfg, state, now=0.0)
    return (time.perf_counter() - start) * 1000.0


def _summarise(size: int, samples: Sequence[float]) -> LatencyRow:
    median = statistics.median(samples)
    p95 = float(np.percentile(samples, 95))
    hz = 1000.0 / median if median > 0 else float("inf")
    return LatencyRow(size, median, p95, hz)


def benchmark(
    sizes: Sequence[int],
    cfg: PipelineConfig,
    repetitions: int = 50,
    *,
    seed: int = 0,
    parallel: bool = False,
) -> list[LatencyRow]:
    """
    Measure `process_frame` latency for each workload size.

    Every repetition starts from a fresh `PipelineState`, so each frame pays
    for its adaptive refit. Repetitions run one after another unless
    ``parallel`` is set, in which case they share a thread pool and the
    figures describe throughput under contention.

    Parameters
    ----------
    sizes : sequence of int
        Point counts; each gets a `standard_scene` with ``seed``.
    cfg : PipelineConfig
        Configuration under test.
    repetitions : int
        Timed runs per size, after one untimed warm-up.

    Raises
    ------
    ParameterError
        If ``repetitions`` is below 10 or a size is negative.
    """
    if repetitions < MIN_REPETITIONS:
        raise ParameterError(f"repetitions must be at least {MIN_REPETITIONS}, got {repetitions}")
    rows: list[LatencyRow] = []
    for size in sizes:
        if size < 0:
            raise ParameterError(f"Workload sizes must be non-negative, got {size}")
        cloud = standard_scene(size, seed).cloud
        _time_frame(cloud, cfg)
        if parallel:
            with ThreadPoolExecutor(thread_name_prefix="aerofilter-bench") as pool:
                samples = list(pool.map(lambda _: _time_frame(cloud, cfg), range(repetitions)))
        else:
            samples = [_time_frame(cloud, cfg) for _ in range(repetitions)]
        row = _summarise(size, samples)
        logger.info("%d points: median %.2f ms, p95 %.2f ms, %.1f Hz", row.size, row.median_ms, row.p95_ms, row.hz)
        rows.append(row)
    return rows
