"""Adaptive state carried between frames."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from aerofilter.config import PipelineConfig
from aerofilter.filters.intensity import IntensityThreshold, initial_threshold
from aerofilter.filters.range_gate import RangeGateState

__all__: list[str] = ["PipelineState"]


@dataclass(frozen=True)
class PipelineState:
    """Range gate, intensity threshold and counters of one pipeline instance.

    States are values: `process_frame` returns a new state and never
    mutates the one it was given.
    """

    gate: RangeGateState
    threshold: IntensityThreshold
    last_refit_time: Optional[float] = None
    frames_processed: int = 0
    adaptive_updates: int = 0

    @classmethod
    def initial(cls, cfg: PipelineConfig) -> PipelineState:
        """State of a pipeline that has not seen a frame yet."""
        return cls(
            gate=cfg.range_gate_state(),
            threshold=initial_threshold(cfg.intensity.p, cfg.intensity.bins, cfg.I_th),
        )
