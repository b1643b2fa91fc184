"""
Frame orchestration: range gating, per-branch stages, merge and adaptive updates.

Each frame is split at ``r_min``/``r_max`` into a close and a long branch.
Each branch runs intensity -> Savitzky-Golay -> DOSCOR -> 2D ROR, skipping
stages not enabled for it. The kept points of both branches form the
filtered cloud; every stage's rejects plus the points beyond ``r_max`` form
the rejected cloud. The adaptive samplers run after the frame.
"""

from __future__ import annotations

import logging as logging_mod
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from typing import Callable, Iterable, Iterator, NamedTuple, Optional, Sequence

import numpy as np

from aerofilter.cloud import PointCloud
from aerofilter.config import PipelineConfig
from aerofilter.exceptions.pipeline import StreamError
from aerofilter.filters.doscor import doscor_filter
from aerofilter.filters.intensity import adapt_threshold, filter_by_intensity
from aerofilter.filters.range_gate import split_by_range, update_r_min
from aerofilter.filters.result import Branch
from aerofilter.filters.savgol import sg_smooth_and_reject
from aerofilter.filters.spatial import ror2d_filter
from aerofilter.utils.logging import clear_log_context, set_log_context

from .report import FRAME_BRANCH, FilterReport, StageReport
from .state import PipelineState

__all__: list[str] = ["FrameResult", "process_frame", "run_stream"]

logger: logging_mod.Logger = logging_mod.getLogger(__name__)


class FrameResult(NamedTuple):
    """Output of one frame."""

    filtered: PointCloud
    rejected: PointCloud
    report: FilterReport
    state: PipelineState


class _BranchOutcome(NamedTuple):
    kept: PointCloud
    rejected: list[PointCloud]
    reports: list[StageReport]


class _StageOutput(NamedTuple):
    kept: PointCloud
    rejected: PointCloud
    degraded: bool = False
    error: Optional[str] = None


_StageFn = Callable[[PointCloud], _StageOutput]


def _nothing(cloud: PointCloud) -> PointCloud:
    return cloud.subset(np.zeros(len(cloud), dtype=bool))


def _elapsed_ms(start: float) -> float:
    return (time.perf_counter() - start) * 1000.0


def _stage_table(cfg: PipelineConfig, state: PipelineState, branch: Branch) -> list[tuple[str, bool, _StageFn]]:
    sg_cfg = cfg.sg_config(branch)
    doscor_cfg = cfg.doscor_config()
    ror_cfg = cfg.ror2d_config()

    def intensity(c: PointCloud) -> _StageOutput:
        return _StageOutput(*filter_by_intensity(c, state.threshold))

    def sg(c: PointCloud) -> _StageOutput:
        result = sg_smooth_and_reject(c, sg_cfg, branch)
        return _StageOutput(result.kept, result.rejected)

    def doscor(c: PointCloud) -> _StageOutput:
        result = doscor_filter(c, doscor_cfg)
        return _StageOutput(result.kept, result.rejected, result.degraded, result.error)

    def ror2d(c: PointCloud) -> _StageOutput:
        return _StageOutput(*ror2d_filter(c, ror_cfg))

    stages = cfg.stages
    return [
        ("intensity", stages.intensity.runs_on(branch), intensity),
        ("sg", stages.sg.runs_on(branch), sg),
        ("doscor", stages.doscor.runs_on(branch), doscor),
        ("ror2d", stages.ror2d.runs_on(branch), ror2d),
    ]


def _run_stage(branch: Branch, name: str, enabled: bool, fn: _StageFn, cloud: PointCloud) -> tuple[_StageOutput, StageReport]:
    count = len(cloud)
    if not enabled or count == 0:
        return _StageOutput(cloud, _nothing(cloud)), StageReport(str(branch), name, enabled, count, count, 0)
    start = time.perf_counter()
    try:
        output = fn(cloud)
    except Exception as e:
        logger.error("Stage %s failed on the %s branch; passing its %d points through", name, branch, count, exc_info=True)
        output = _StageOutput(cloud, _nothing(cloud), True, f"{type(e).__name__}: {e}")
    wall_ms = _elapsed_ms(start)
    logger.debug("%s/%s kept %d of %d in %.2f ms", branch, name, len(output.kept), count, wall_ms)
    return output, StageReport(str(branch), name, True, count, len(output.kept), len(output.rejected), wall_ms, output.degraded, output.error)


def _run_branch(branch: Branch, cloud: PointCloud, cfg: PipelineConfig, state: PipelineState, frame_label: str) -> _BranchOutcome:
    set_log_context("frame_id", frame_label)
    set_log_context("branch", str(branch))
    current = cloud
    rejected: list[PointCloud] = []
    reports: list[StageReport] = []
    for name, enabled, fn in _stage_table(cfg, state, branch):
        output, report = _run_stage(branch, name, enabled, fn, current)
        current = output.kept
        rejected.append(output.rejected)
        reports.append(report)
    return _BranchOutcome(current, rejected, reports)


def _advance_state(state: PipelineState, frame: PointCloud, cfg: PipelineConfig, now: float) -> tuple[PipelineState, bool]:
    """Run the adaptive samplers on the whole incoming frame if one is due at ``now``."""
    if not state.gate.sample_due(now):
        return replace(state, frames_processed=state.frames_processed + 1), False
    gate = update_r_min(state.gate, frame, now)
    threshold = state.threshold
    if len(frame):
        threshold = adapt_threshold(frame.intensity, state.threshold, cfg.intensity)
    if threshold is not state.threshold:
        logger.info("Intensity threshold %.4f -> %.4f", state.threshold.i_th, threshold.i_th)
    advanced = PipelineState(
        gate=gate,
        threshold=threshold,
        last_refit_time=now,
        frames_processed=state.frames_processed + 1,
        adaptive_updates=state.adaptive_updates + 1,
    )
    return advanced, True


def process_frame(
    cloud: PointCloud,
    cfg: PipelineConfig,
    state: Optional[PipelineState] = None,
    *,
    now: Optional[float] = None,
    config_source: str = "initial values",
    notes: Sequence[str] = (),
) -> FrameResult:
    """
    Filter one frame.

    Parameters
    ----------
    cloud : PointCloud
        The frame.
    cfg : PipelineConfig
        Validated configuration.
    state : PipelineState, optional
        State from the previous frame; a fresh state when ``None``.
    now : float, optional
        Time of the adaptive samplers. Defaults to the frame timestamp, then
        to ``time.monotonic()``.
    config_source, notes
        Recorded verbatim in the report.

    Returns
    -------
    FrameResult
        ``filtered`` and ``rejected`` partition ``cloud``; both are in frame order.
    """
    state = state if state is not None else PipelineState.initial(cfg)
    start = time.perf_counter()
    frame_label = cloud.frame_id or str(state.frames_processed)
    set_log_context("frame_id", frame_label)
    try:
        split = split_by_range(cloud, state.gate)
        gate_report = StageReport(FRAME_BRANCH, "range_gate", True, len(cloud), len(cloud) - len(split.dropped), len(split.dropped))
        reports = [gate_report]
        if len(cloud) == 0:
            outcomes = [_BranchOutcome(split.close, [], []), _BranchOutcome(split.long, [], [])]
        elif cfg.parallel_branches:
            with ThreadPoolExecutor(max_workers=2, thread_name_prefix="aerofilter-branch") as pool:
                futures = [pool.submit(_run_branch, b, c, cfg, state, frame_label) for b, c in ((Branch.CLOSE, split.close), (Branch.LONG, split.long))]
                outcomes = [f.result() for f in futures]
        else:
            outcomes = [_run_branch(Branch.CLOSE, split.close, cfg, state, frame_label), _run_branch(Branch.LONG, split.long, cfg, state, frame_label)]
            set_log_context("branch", "-")
        for outcome in outcomes:
            reports.extend(outcome.reports)
        filtered = PointCloud.merge([o.kept for o in outcomes], frame_id=cloud.frame_id, timestamp=cloud.timestamp)
        rejected_parts = [part for o in outcomes for part in o.rejected] + [split.dropped]
        rejected = PointCloud.merge(rejected_parts, frame_id=cloud.frame_id, timestamp=cloud.timestamp)
        end_to_end_ms = _elapsed_ms(start)

        sample_time = now if now is not None else (cloud.timestamp if cloud.timestamp is not None else time.monotonic())
        next_state, updated = _advance_state(state, cloud, cfg, sample_time)

        report = FilterReport(
            frame_id=cloud.frame_id,
            timestamp=cloud.timestamp,
            input_count=len(cloud),
            kept_count=len(filtered),
            rejected_count=len(rejected),
            dropped_count=len(split.dropped),
            stages=tuple(reports),
            end_to_end_ms=end_to_end_ms,
            r_min=state.gate.r_min,
            r_max=state.gate.r_max,
            i_th=state.threshold.i_th,
            weibull=state.threshold.fit,
            adaptive_update=updated,
            next_r_min=next_state.gate.r_min if updated else None,
            next_i_th=next_state.threshold.i_th if updated else None,
            config_source=config_source,
            notes=tuple(notes),
        )
        if report.degraded_stages:
            logger.warning("Frame passed through degraded stages: %s", ", ".join(report.degraded_stages))
        logger.info("Kept %d of %d points (%d rejected, %d beyond r_max) in %.2f ms", len(filtered), len(cloud), len(rejected), len(split.dropped), end_to_end_ms)
        return FrameResult(filtered, rejected, report, next_state)
    finally:
        clear_log_context()


def run_stream(
    frames: Iterable[PointCloud],
    cfg: PipelineConfig,
    state: Optional[PipelineState] = None,
    *,
    config_source: str = "initial values",
    notes: Sequence[str] = (),
) -> Iterator[FrameResult]:
    """
    Filter a sequence of frames, threading the adaptive state through them.

    Frames are processed lazily and in order; the samplers use the frame
    timestamps, so the ranges and threshold adapt at most once per sampling
    period of stream time.

    Raises
    ------
    StreamError
        At a frame without a timestamp or with a timestamp earlier than its predecessor's.
    """
    current = state if state is not None else PipelineState.initial(cfg)
    previous: Optional[float] = None
    for position, frame in enumerate(frames):
        if frame.timestamp is None:
            raise StreamError(f"Frame {position} ({frame.frame_id!r}) has no timestamp")
        if previous is not None and frame.timestamp < previous:
            raise StreamError(f"Frame {position} ({frame.frame_id!r}) at {frame.timestamp} s precedes the previous frame at {previous} s")
        previous = frame.timestamp
        result = process_frame(frame, cfg, current, now=frame.timestamp, config_source=config_source, notes=notes)
        current = result.state
        yield result
