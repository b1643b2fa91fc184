"""RSS-derived range limits, the adaptive close-range radius and the range split."""

from __future__ import annotations

import logging as logging_mod
import math
from dataclasses import dataclass, replace
from typing import NamedTuple, Optional

import numpy as np

from aerofilter.cloud import PointCloud
from aerofilter.exceptions.base import ParameterError

__all__: list[str] = [
    "RssConfig",
    "RangeGateState",
    "RangeSplit",
    "R_MAX_DEFAULT",
    "R_MAX_BOUNDS",
    "R_MIN_DEFAULT",
    "R_MIN_BOUNDS",
    "CLOSE_BUDGET_DEFAULT",
    "SAMPLE_PERIOD",
    "longitudinal_safe_distance",
    "compute_r_max",
    "update_r_min",
    "split_by_range",
]

logger: logging_mod.Logger = logging_mod.getLogger(__name__)

R_MAX_DEFAULT = 30.0
R_MAX_BOUNDS = (10.0, 100.0)
R_MIN_DEFAULT = 5.0
R_MIN_BOUNDS = (2.0, 10.0)
CLOSE_BUDGET_DEFAULT = 30_000
SAMPLE_PERIOD = 1.0
# Growth aims at the middle of the [0.5, 1.0] x budget hysteresis band.
_GROW_TARGET = 0.75
_SHRINK_TRIGGER = 1.0
_GROW_TRIGGER = 0.5


@dataclass(frozen=True)
class RssConfig:
    """Kinematic constants of the longitudinal safe-distance model.

    Parameters
    ----------
    v_r : float
        Robot velocity in m/s.
    v_f : float
        Velocity of the dynamic obstacle ahead in m/s.
    a_accel : float
        Maximum robot acceleration during the response time, m/s².
    a_min_brake : float
        Minimum robot braking deceleration, m/s². Must be positive.
    a_max_brake : float
        Maximum obstacle braking deceleration, m/s². Must be positive.
    eta : float
        Response time in seconds.
    envelope : tuple[tuple[float, float], ...]
        Operating envelope of ``(v_r, v_f)`` pairs over which `compute_r_max`
        takes the maximum safe distance. Empty means "use the default r_max".
    """

    v_r: float = 1.2
    v_f: float = 0.0
    a_accel: float = 1.0
    a_min_brake: float = 2.0
    a_max_brake: float = 4.0
    eta: float = 1.0
    envelope: tuple[tuple[float, float], ...] = ()

    def __post_init__(self) -> None:
        if not self.a_min_brake > 0 or not self.a_max_brake > 0:
            raise ParameterError(f"Braking decelerations must be positive, got a_min_brake={self.a_min_brake}, a_max_brake={self.a_max_brake}")
        if self.v_r < 0 or self.v_f < 0 or self.eta < 0:
            raise ParameterError("v_r, v_f and eta must be non-negative")
        for v_r, v_f in self.envelope:
            if v_r < 0 or v_f < 0:
                raise ParameterError(f"Envelope velocities must be non-negative, got ({v_r}, {v_f})")


@dataclass(frozen=True)
class RangeGateState:
    """Adaptive range limits carried from frame to frame.

    ``last_sample_time`` is ``None`` until the first 1 Hz sample.
    """

    r_max: float = R_MAX_DEFAULT
    r_min: float = R_MIN_DEFAULT
    close_budget: int = CLOSE_BUDGET_DEFAULT
    last_sample_time: Optional[float] = None
    sample_period: float = SAMPLE_PERIOD

    def __post_init__(self) -> None:
        if not R_MIN_BOUNDS[0] <= self.r_min <= R_MIN_BOUNDS[1]:
            raise ParameterError(f"r_min = {self.r_min} is outside [{R_MIN_BOUNDS[0]:g}, {R_MIN_BOUNDS[1]:g}]")
        if not R_MAX_BOUNDS[0] <= self.r_max <= R_MAX_BOUNDS[1]:
            raise ParameterError(f"r_max = {self.r_max} is outside [{R_MAX_BOUNDS[0]:g}, {R_MAX_BOUNDS[1]:g}]")
        if not self.r_min < self.r_max:
            raise ParameterError(f"r_min ({self.r_min}) must be below r_max ({self.r_max})")
        if self.close_budget < 1:
            raise ParameterError(f"close_budget must be at least 1, got {self.close_budget}")
        if not self.sample_period > 0:
            raise ParameterError(f"sample_period must be positive, got {self.sample_period}")

    def sample_due(self, now: float) -> bool:
        """Whether a sample taken at ``now`` respects the sampling period."""
        return self.last_sample_time is None or now - self.last_sample_time >= self.sample_period


class RangeSplit(NamedTuple):
    """The three range segments of a frame."""

    close: PointCloud
    long: PointCloud
    dropped: PointCloud


def longitudinal_safe_distance(cfg: RssConfig, v_r: Optional[float] = None, v_f: Optional[float] = None) -> float:
    """Minimum longitudinal safe distance in metres.

    ``d = v_r*eta + a_accel*eta**2/2 + (v_r + eta*a_accel)**2/(2*a_min_brake)
    - v_f**2/(2*a_max_brake)``, clamped below at zero.

    Parameters
    ----------
    cfg : RssConfig
        Kinematic constants.
    v_r, v_f : float, optional
        Velocities overriding ``cfg.v_r`` and ``cfg.v_f``.

    Returns
    -------
    float

    Raises
    ------
    ParameterError
        If a braking deceleration is not positive.
    """
    robot = cfg.v_r if v_r is None else v_r
    obstacle = cfg.v_f if v_f is None else v_f
    if not cfg.a_min_brake > 0 or not cfg.a_max_brake > 0:
        raise ParameterError("Braking decelerations must be positive")
    eta = cfg.eta
    distance = (
        robot * eta
        + 0.5 * cfg.a_accel * eta * eta
        + (robot + eta * cfg.a_accel) ** 2 / (2.0 * cfg.a_min_brake)
        - obstacle * obstacle / (2.0 * cfg.a_max_brake)
    )
    return max(0.0, distance)


def compute_r_max(cfg: RssConfig) -> float:
    """Maximum filtration radius: the largest safe distance over the envelope.

    Clamped into ``[10, 100]`` m. Returns 30 m when no envelope is configured.
    """
    if not cfg.envelope:
        return R_MAX_DEFAULT
    candidate = max(longitudinal_safe_distance(cfg, v_r, v_f) for v_r, v_f in cfg.envelope)
    r_max = min(max(candidate, R_MAX_BOUNDS[0]), R_MAX_BOUNDS[1])
    logger.debug("Envelope safe distance %.3f m gives r_max %.3f m", candidate, r_max)
    return r_max


def update_r_min(state: RangeGateState, cloud: PointCloud, now: float) -> RangeGateState:
    """Adapt ``r_min`` to the close-range point budget, at most once per period.

    When a sample is due, the points with ``r <= r_min`` are counted:

    - above the budget, ``r_min`` shrinks by ``(budget / count) ** (1/3)``;
    - below half the budget, ``r_min`` grows towards 0.75 x budget by the same
      cubic rule, capped just below the range of the ``budget + 1``-th closest
      point so the grown gate never holds more than the budget;
    - otherwise it is unchanged.

    ``r_min`` always stays in ``[2, 10]`` m and below ``r_max``. Every sample
    stamps ``last_sample_time`` even when ``r_min`` does not move.

    Returns
    -------
    RangeGateState
        ``state`` itself when no sample is due, a new state otherwise.
    """
    if not state.sample_due(now):
        return state
    ranges = cloud.ranges()
    count = int(np.count_nonzero(ranges <= state.r_min))
    budget = state.close_budget
    r_min = state.r_min
    if count > _SHRINK_TRIGGER * budget:
        r_min = state.r_min * (budget / count) ** (1.0 / 3.0)
    elif count < _GROW_TRIGGER * budget:
        r_min = state.r_min * (_GROW_TARGET * budget / max(count, 1)) ** (1.0 / 3.0)
        if ranges.shape[0] > budget:
            cap = float(np.partition(ranges, budget)[budget])
            r_min = min(r_min, math.nextafter(cap, -math.inf))
    upper = min(R_MIN_BOUNDS[1], math.nextafter(state.r_max, -math.inf))
    r_min = min(max(r_min, R_MIN_BOUNDS[0]), upper)
    if r_min != state.r_min:
        logger.info("Close range holds %d points (budget %d): r_min %.3f -> %.3f m", count, budget, state.r_min, r_min)
    return replace(state, r_min=r_min, last_sample_time=now)


def split_by_range(cloud: PointCloud, state: RangeGateState) -> RangeSplit:
    """Split a frame into close (``r <= r_min``), long (``r_min < r <= r_max``) and dropped points.

    The three parts partition the input and keep its order.
    """
    ranges = cloud.ranges()
    close_mask = ranges <= state.r_min
    dropped_mask = ranges > state.r_max
    long_mask = ~close_mask & ~dropped_mask
    return RangeSplit(cloud.subset(close_mask), cloud.subset(long_mask), cloud.subset(dropped_mask))
