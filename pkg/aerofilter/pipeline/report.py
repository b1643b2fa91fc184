"""Per-frame filtering reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from aerofilter.filters.intensity import WeibullParams
from aerofilter.types import JsonObject

__all__: list[str] = ["StageReport", "FilterReport", "FRAME_BRANCH"]

FRAME_BRANCH = "frame"
"""Branch label of stages that see the whole frame."""


@dataclass(frozen=True)
class StageReport:
    """Counts and timing of one stage on one branch.

    ``input_count == kept_count + rejected_count`` always holds.
    """

    branch: str
    name: str
    enabled: bool
    input_count: int
    kept_count: int
    rejected_count: int
    wall_ms: float = 0.0
    degraded: bool = False
    error: Optional[str] = None

    def to_dict(self) -> JsonObject:
        return {
            "branch": self.branch,
            "name": self.name,
            "enabled": self.enabled,
            "input_count": self.input_count,
            "kept_count": self.kept_count,
            "rejected_count": self.rejected_count,
            "wall_ms": self.wall_ms,
            "degraded": self.degraded,
            "error": self.error,
        }


@dataclass(frozen=True)
class FilterReport:
    """What happened to one frame.

    ``r_min``, ``r_max``, ``i_th`` and ``weibull`` are the values the frame
    was filtered with. When the adaptive samplers fired after the frame,
    ``adaptive_update`` is set and ``next_r_min``/``next_i_th`` hold the
    values the next frame will use.
    """

    frame_id: str
    timestamp: Optional[float]
    input_count: int
    kept_count: int
    rejected_count: int
    dropped_count: int
    stages: tuple[StageReport, ...]
    end_to_end_ms: float
    r_min: float
    r_max: float
    i_th: float
    weibull: Optional[WeibullParams] = None
    adaptive_update: bool = False
    next_r_min: Optional[float] = None
    next_i_th: Optional[float] = None
    config_source: str = "initial values"
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def degraded_stages(self) -> list[str]:
        """``branch/name`` of every stage that ran as pass-through after an error."""
        return [f"{s.branch}/{s.name}" for s in self.stages if s.degraded]

    def stages_for(self, branch: str) -> list[StageReport]:
        """Stage reports of ``branch``, in execution order."""
        return [s for s in self.stages if s.branch == branch]

    def to_dict(self) -> JsonObject:
        """JSON-ready representation."""
        return {
            "frame_id": self.frame_id,
            "timestamp": self.timestamp,
            "input_count": self.input_count,
            "kept_count": self.kept_count,
            "rejected_count": self.rejected_count,
            "dropped_count": self.dropped_count,
            "stages": [s.to_dict() for s in self.stages],
            "degraded_stages": list(self.degraded_stages),
            "end_to_end_ms": self.end_to_end_ms,
            "r_min": self.r_min,
            "r_max": self.r_max,
            "i_th": self.i_th,
            "weibull": None if self.weibull is None else {"alpha": self.weibull.alpha, "gamma": self.weibull.gamma, "mu": self.weibull.mu},
            "adaptive_update": self.adaptive_update,
            "next_r_min": self.next_r_min,
            "next_i_th": self.next_i_th,
            "config_source": self.config_source,
            "notes": list(self.notes),
        }
