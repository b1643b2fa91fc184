"""
The validated pipeline configuration.

`PipelineConfig` carries the eight tuning parameters under their document
names (``r_max``, ``r_min``, ``I_th``, ``r_d``, ``K_nn``, ``r_th``, ``c_th``,
``r_nn``) plus per-stage sections and runtime settings. Every instance has
passed range validation; stage configs are derived from it on demand.
"""

from __future__ import annotations

import logging as logging_mod
import math
from dataclasses import dataclass, field, replace
from typing import Any, Iterable, Mapping, Optional

from aerofilter.exceptions.base import ParameterError
from aerofilter.exceptions.config import InvalidConfigError, UnknownConfigKeyError
from aerofilter.filters.doscor import QUERY_RADIUS_DEFAULT, DoscorConfig, DoscorStatistic
from aerofilter.filters.intensity import IntensitySettings, LocationMode
from aerofilter.filters.range_gate import CLOSE_BUDGET_DEFAULT, SAMPLE_PERIOD, RangeGateState, RssConfig, compute_r_max
from aerofilter.filters.result import Branch
from aerofilter.filters.savgol import SgConfig
from aerofilter.filters.spatial import Ror2dConfig
from aerofilter.types import JsonObject
from aerofilter.utils.type_guards import assert_type, is_bool, is_int, is_mapping, is_number, is_number_pair, is_str

__all__: list[str] = [
    "PipelineConfig",
    "ParameterRange",
    "PARAMETER_RANGES",
    "StageSettings",
    "StagesSettings",
    "SgSettings",
    "DoscorSettings",
    "Ror2dSettings",
]

logger: logging_mod.Logger = logging_mod.getLogger(__name__)


@dataclass(frozen=True)
class ParameterRange:
    """Permitted closed interval and initial value of one tuning parameter."""

    low: float
    high: float
    initial: float | tuple[float, float]
    integer: bool = False

    @property
    def interval(self) -> tuple[float, float]:
        return (self.low, self.high)


# r_d's bounds depend on r_min and r_max; the entry holds the widest case.
PARAMETER_RANGES: dict[str, ParameterRange] = {
    "r_max": ParameterRange(10.0, 100.0, 30.0),
    "r_min": ParameterRange(2.0, 10.0, 5.0),
    "I_th": ParameterRange(0.0, math.inf, 2.0),
    "p": ParameterRange(0.1, 0.15, 0.15),
    "r_d": ParameterRange(1.0, 90.0, (4.0, 20.0)),
    "K_nn": ParameterRange(3, 6, 6, integer=True),
    "r_th": ParameterRange(0.2, 0.6, 0.45),
    "c_th": ParameterRange(0.1, 0.5, 0.4),
    "r_nn": ParameterRange(0.1, 0.16, 0.15),
}

_ALL_BRANCHES = frozenset({Branch.CLOSE, Branch.LONG})
_LONG_ONLY = frozenset({Branch.LONG})


@dataclass(frozen=True)
class StageSettings:
    """Whether a stage runs, and on which branches."""

    enabled: bool = True
    branches: frozenset[Branch] = _ALL_BRANCHES

    def runs_on(self, branch: Branch) -> bool:
        return self.enabled and branch in self.branches


@dataclass(frozen=True)
class StagesSettings:
    """Stage toggles for the four per-branch stages."""

    intensity: StageSettings = StageSettings()
    sg: StageSettings = StageSettings()
    doscor: StageSettings = StageSettings(branches=_LONG_ONLY)
    ror2d: StageSettings = StageSettings(branches=_LONG_ONLY)

    def disabled(self) -> StagesSettings:
        """The same branches with every stage switched off."""
        return StagesSettings(*(replace(getattr(self, name), enabled=False) for name in _STAGE_NAMES))


_STAGE_NAMES = ("intensity", "sg", "doscor", "ror2d")


@dataclass(frozen=True)
class SgSettings:
    """Savitzky-Golay presets of the close and long branch.

    ``r_d`` of both presets is overridden by the top-level ``r_d``.
    """

    close: SgConfig = field(default_factory=SgConfig.close_preset)
    long: SgConfig = field(default_factory=SgConfig.long_preset)


@dataclass(frozen=True)
class DoscorSettings:
    """DOSCOR settings not covered by ``K_nn``, ``c_th`` and ``r_th``."""

    query_radius: float = QUERY_RADIUS_DEFAULT
    statistic: DoscorStatistic = DoscorStatistic.POINT_MEAN


@dataclass(frozen=True)
class Ror2dSettings:
    """2D ROR neighbour count; independent of ``K_nn`` but validated against its interval."""

    k_nn: int = 6


@dataclass(frozen=True)
class PipelineConfig:
    """
    Complete, range-checked configuration of the filtering pipeline.

    Raises
    ------
    InvalidConfigError
        If a tuning parameter lies outside its permitted interval. The error
        names the parameter and the interval.
    """

    r_max: float = 30.0
    r_min: float = 5.0
    I_th: float = 2.0
    r_d: tuple[float, float] = (4.0, 20.0)
    K_nn: int = 6
    r_th: float = 0.45
    c_th: float = 0.4
    r_nn: float = 0.15
    rss: RssConfig = field(default_factory=RssConfig)
    intensity: IntensitySettings = field(default_factory=IntensitySettings)
    sg: SgSettings = field(default_factory=SgSettings)
    doscor: DoscorSettings = field(default_factory=DoscorSettings)
    ror2d: Ror2dSettings = field(default_factory=Ror2dSettings)
    stages: StagesSettings = field(default_factory=StagesSettings)
    close_budget: int = CLOSE_BUDGET_DEFAULT
    sample_period: float = SAMPLE_PERIOD
    frame_period: float = 0.1
    parallel_branches: bool = False
    workers: int = -1

    def __post_init__(self) -> None:
        for name in ("r_max", "r_min", "r_th", "c_th", "r_nn"):
            _check_range(name, getattr(self, name))
        if not self.I_th >= 0 or not math.isfinite(self.I_th):
            raise InvalidConfigError.out_of_range("I_th", self.I_th, PARAMETER_RANGES["I_th"].interval)
        _check_range("p", self.intensity.p, parameter="intensity.p")
        _check_integer_range("K_nn", self.K_nn)
        _check_integer_range("K_nn", self.ror2d.k_nn, parameter="ror2d.k_nn")
        if not self.r_min < self.r_max:
            raise InvalidConfigError(f"r_min ({self.r_min:g}) must be below r_max ({self.r_max:g})", parameter="r_min")
        r_d_interval = (self.r_min - 1.0, self.r_max - 10.0)
        for value in self.r_d:
            if not r_d_interval[0] <= value <= r_d_interval[1]:
                raise InvalidConfigError.out_of_range("r_d", list(self.r_d), r_d_interval)
        if self.r_d[0] > self.r_d[1]:
            raise InvalidConfigError(f"r_d close ({self.r_d[0]:g}) must not exceed r_d long ({self.r_d[1]:g})", parameter="r_d")
        object.__setattr__(self, "r_d", (float(self.r_d[0]), float(self.r_d[1])))
        if self.close_budget < 1:
            raise InvalidConfigError(f"close_budget must be positive, got {self.close_budget}", parameter="close_budget")
        for name in ("sample_period", "frame_period"):
            if not getattr(self, name) > 0:
                raise InvalidConfigError(f"{name} must be positive, got {getattr(self, name)}", parameter=name)
        if not (self.workers == -1 or self.workers >= 1):
            raise InvalidConfigError(f"workers must be -1 or positive, got {self.workers}", parameter="workers")

    # Derived stage configs

    def initial_r_max(self) -> float:
        """``r_max`` for a fresh pipeline: the RSS envelope's value when one is configured."""
        return compute_r_max(self.rss) if self.rss.envelope else self.r_max

    def range_gate_state(self) -> RangeGateState:
        """Initial range-gate state."""
        r_max = self.initial_r_max()
        r_min = min(self.r_min, math.nextafter(r_max, -math.inf))
        return RangeGateState(r_max=r_max, r_min=r_min, close_budget=self.close_budget, sample_period=self.sample_period)

    def sg_config(self, branch: Branch | str) -> SgConfig:
        """The Savitzky-Golay config of ``branch`` with the top-level ``r_d`` applied."""
        preset = self.sg.close if Branch(branch) is Branch.CLOSE else self.sg.long
        period = preset.sample_period if preset.sample_period is not None else self.frame_period
        return replace(preset, r_d=self.r_d, sample_period=period)

    def doscor_config(self) -> DoscorConfig:
        return DoscorConfig(
            query_radius=self.doscor.query_radius,
            k_min=self.K_nn,
            c_th=self.c_th,
            r_th=self.r_th,
            statistic=self.doscor.statistic,
            workers=self.workers,
        )

    def ror2d_config(self) -> Ror2dConfig:
        return Ror2dConfig(r_nn=self.r_nn, k_nn=self.ror2d.k_nn, workers=self.workers)

    # Serialisation

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> PipelineConfig:
        """Build a config from a document mapping; absent keys take their initial values.

        Raises
        ------
        UnknownConfigKeyError
            For a key that is not part of the schema, at any nesting level.
        InvalidConfigError
            For out-of-range or structurally invalid values.
        ConfigValueError
            For values of the wrong JSON type.
        """
        _reject_unknown(data, _TOP_LEVEL_KEYS, "")
        kwargs: dict[str, Any] = {}
        for name in ("r_max", "r_min", "I_th", "r_th", "c_th", "r_nn", "sample_period", "frame_period"):
            if name in data:
                kwargs[name] = _number(data[name], name)
        for name in ("K_nn", "close_budget", "workers"):
            if name in data:
                kwargs[name] = _integer(data[name], name)
        if "parallel_branches" in data:
            assert_type(data["parallel_branches"], is_bool, "a boolean", "parallel_branches")
            kwargs["parallel_branches"] = data["parallel_branches"]
        if "r_d" in data:
            assert_type(data["r_d"], is_number_pair, "a [close, long] pair of numbers", "r_d")
            kwargs["r_d"] = (float(data["r_d"][0]), float(data["r_d"][1]))
        if "rss" in data:
            kwargs["rss"] = _parse_rss(_section(data, "rss"))
        if "intensity" in data:
            kwargs["intensity"] = _parse_intensity(_section(data, "intensity"))
        if "sg" in data:
            kwargs["sg"] = _parse_sg(_section(data, "sg"))
        if "doscor" in data:
            kwargs["doscor"] = _parse_doscor(_section(data, "doscor"))
        if "ror2d" in data:
            raw = _section(data, "ror2d")
            _reject_unknown(raw, ("k_nn",), "ror2d.")
            kwargs["ror2d"] = Ror2dSettings(_integer(raw["k_nn"], "ror2d.k_nn")) if "k_nn" in raw else Ror2dSettings()
        if "stages" in data:
            kwargs["stages"] = _parse_stages(_section(data, "stages"))
        return cls(**kwargs)

    def to_dict(self) -> JsonObject:
        """The config as a document that `from_mapping` reads back to an equal config."""
        return {
            "r_max": self.r_max,
            "r_min": self.r_min,
            "I_th": self.I_th,
            "r_d": [self.r_d[0], self.r_d[1]],
            "K_nn": self.K_nn,
            "r_th": self.r_th,
            "c_th": self.c_th,
            "r_nn": self.r_nn,
            "rss": {
                "v_r": self.rss.v_r,
                "v_f": self.rss.v_f,
                "a_accel": self.rss.a_accel,
                "a_min_brake": self.rss.a_min_brake,
                "a_max_brake": self.rss.a_max_brake,
                "eta": self.rss.eta,
                "envelope": [[v_r, v_f] for v_r, v_f in self.rss.envelope],
            },
            "intensity": {
                "p": self.intensity.p,
                "clip_fraction": self.intensity.clip_fraction,
                "bins": self.intensity.bins,
                "location": str(self.intensity.location),
                "min_samples": self.intensity.min_samples,
            },
            "sg": {"close": _sg_to_dict(self.sg.close), "long": _sg_to_dict(self.sg.long)},
            "doscor": {"query_radius": self.doscor.query_radius, "statistic": str(self.doscor.statistic)},
            "ror2d": {"k_nn": self.ror2d.k_nn},
            "stages": {
                name: {"enabled": stage.enabled, "branches": sorted(str(b) for b in stage.branches)}
                for name, stage in ((n, getattr(self.stages, n)) for n in _STAGE_NAMES)
            },
            "close_budget": self.close_budget,
            "sample_period": self.sample_period,
            "frame_period": self.frame_period,
            "parallel_branches": self.parallel_branches,
            "workers": self.workers,
        }


_TOP_LEVEL_KEYS = (
    "r_max",
    "r_min",
    "I_th",
    "r_d",
    "K_nn",
    "r_th",
    "c_th",
    "r_nn",
    "rss",
    "intensity",
    "sg",
    "doscor",
    "ror2d",
    "stages",
    "close_budget",
    "sample_period",
    "frame_period",
    "parallel_branches",
    "workers",
)
_RSS_NUMBERS = ("v_r", "v_f", "a_accel", "a_min_brake", "a_max_brake", "eta")
SG_PRESET_KEYS = (
    "poly_degree",
    "half_window",
    "residual_tolerance",
    "use_optimal_window",
    "replace_outliers",
    "ring_width",
    "max_azimuth_gap",
    "max_half_window",
    "sample_count",
    "sample_period",
)


def _check_range(name: str, value: float, *, parameter: Optional[str] = None) -> None:
    spec = PARAMETER_RANGES[name]
    if not spec.low <= value <= spec.high:
        raise InvalidConfigError.out_of_range(parameter or name, value, spec.interval)


def _check_integer_range(name: str, value: int, *, parameter: Optional[str] = None) -> None:
    label = parameter or name
    if not is_int(value):
        raise InvalidConfigError(f"{label} must be an integer, got {value!r}", parameter=label, interval=PARAMETER_RANGES[name].interval)
    _check_range(name, value, parameter=label)


def _reject_unknown(raw: Mapping[str, Any], allowed: Iterable[str], prefix: str) -> None:
    known = set(allowed)
    for key in raw:
        if key not in known:
            raise UnknownConfigKeyError(f"{prefix}{key}")


def _section(data: Mapping[str, Any], name: str) -> Mapping[str, Any]:
    raw = data[name]
    assert_type(raw, is_mapping, "an object", name)
    return raw


def _number(value: Any, path: str) -> float:
    assert_type(value, is_number, "a number", path)
    return float(value)


def _integer(value: Any, path: str) -> int:
    assert_type(value, is_int, "an integer", path)
    return int(value)


def _optional_number(value: Any, path: str) -> Optional[float]:
    return None if value is None else _number(value, path)


def _build(section: str, factory: Any, **kwargs: Any) -> Any:
    try:
        return factory(**kwargs)
    except ParameterError as e:
        raise InvalidConfigError(f"{section}: {e}", parameter=section) from e


def _parse_rss(raw: Mapping[str, Any]) -> RssConfig:
    _reject_unknown(raw, (*_RSS_NUMBERS, "envelope"), "rss.")
    kwargs: dict[str, Any] = {name: _number(raw[name], f"rss.{name}") for name in _RSS_NUMBERS if name in raw}
    if "envelope" in raw:
        envelope = raw["envelope"]
        if not isinstance(envelope, (list, tuple)):
            raise InvalidConfigError("rss.envelope must be a list of [v_r, v_f] pairs", parameter="rss.envelope")
        pairs: list[tuple[float, float]] = []
        for i, pair in enumerate(envelope):  # pyright: ignore[reportUnknownVariableType, reportUnknownArgumentType]
            assert_type(pair, is_number_pair, "a [v_r, v_f] pair", f"rss.envelope[{i}]")
            pairs.append((float(pair[0]), float(pair[1])))
        kwargs["envelope"] = tuple(pairs)
    return _build("rss", RssConfig, **kwargs)


def _parse_intensity(raw: Mapping[str, Any]) -> IntensitySettings:
    _reject_unknown(raw, ("p", "clip_fraction", "bins", "location", "min_samples"), "intensity.")
    kwargs: dict[str, Any] = {}
    if "p" in raw:
        kwargs["p"] = _number(raw["p"], "intensity.p")
    if "clip_fraction" in raw:
        kwargs["clip_fraction"] = _optional_number(raw["clip_fraction"], "intensity.clip_fraction")
    for name in ("bins", "min_samples"):
        if name in raw:
            kwargs[name] = _integer(raw[name], f"intensity.{name}")
    if "location" in raw:
        assert_type(raw["location"], is_str, "a string", "intensity.location")
        try:
            kwargs["location"] = LocationMode(raw["location"])
        except ValueError:
            raise InvalidConfigError(f"intensity.location must be one of {[m.value for m in LocationMode]}", parameter="intensity.location") from None
    return _build("intensity", IntensitySettings, **kwargs)


def _parse_sg_preset(raw: Mapping[str, Any], path: str, base: SgConfig) -> SgConfig:
    _reject_unknown(raw, SG_PRESET_KEYS, f"{path}.")
    kwargs: dict[str, Any] = {}
    for name in ("poly_degree", "half_window", "max_half_window"):
        if name in raw:
            kwargs[name] = _integer(raw[name], f"{path}.{name}")
    for name in ("residual_tolerance", "max_azimuth_gap"):
        if name in raw:
            kwargs[name] = _number(raw[name], f"{path}.{name}")
    for name in ("use_optimal_window", "replace_outliers"):
        if name in raw:
            assert_type(raw[name], is_bool, "a boolean", f"{path}.{name}")
            kwargs[name] = raw[name]
    for name in ("ring_width", "sample_period"):
        if name in raw:
            kwargs[name] = _optional_number(raw[name], f"{path}.{name}")
    if "sample_count" in raw:
        kwargs["sample_count"] = None if raw["sample_count"] is None else _integer(raw["sample_count"], f"{path}.sample_count")
    return _build(path, lambda **changes: replace(base, **changes), **kwargs) if kwargs else base


def _parse_sg(raw: Mapping[str, Any]) -> SgSettings:
    _reject_unknown(raw, ("close", "long"), "sg.")
    defaults = SgSettings()
    close = _parse_sg_preset(_section(raw, "close"), "sg.close", defaults.close) if "close" in raw else defaults.close
    far = _parse_sg_preset(_section(raw, "long"), "sg.long", defaults.long) if "long" in raw else defaults.long
    return SgSettings(close=close, long=far)


def _parse_doscor(raw: Mapping[str, Any]) -> DoscorSettings:
    _reject_unknown(raw, ("query_radius", "statistic"), "doscor.")
    settings = DoscorSettings()
    if "query_radius" in raw:
        radius = _number(raw["query_radius"], "doscor.query_radius")
        if not radius > 0:
            raise InvalidConfigError(f"doscor.query_radius must be positive, got {radius}", parameter="doscor.query_radius")
        settings = replace(settings, query_radius=radius)
    if "statistic" in raw:
        assert_type(raw["statistic"], is_str, "a string", "doscor.statistic")
        try:
            settings = replace(settings, statistic=DoscorStatistic(raw["statistic"]))
        except ValueError:
            raise InvalidConfigError(f"doscor.statistic must be one of {[s.value for s in DoscorStatistic]}", parameter="doscor.statistic") from None
    return settings


def _parse_stage(raw: Mapping[str, Any], path: str, base: StageSettings) -> StageSettings:
    _reject_unknown(raw, ("enabled", "branches"), f"{path}.")
    enabled = base.enabled
    branches = base.branches
    if "enabled" in raw:
        assert_type(raw["enabled"], is_bool, "a boolean", f"{path}.enabled")
        enabled = raw["enabled"]
    if "branches" in raw:
        values = raw["branches"]
        if not isinstance(values, (list, tuple)):
            raise InvalidConfigError(f"{path}.branches must be a list", parameter=f"{path}.branches")
        try:
            branches = frozenset(Branch(v) for v in values)  # pyright: ignore[reportUnknownVariableType]
        except ValueError:
            raise InvalidConfigError(f"{path}.branches may only contain 'close' and 'long'", parameter=f"{path}.branches") from None
    return StageSettings(enabled=enabled, branches=branches)


def _parse_stages(raw: Mapping[str, Any]) -> StagesSettings:
    _reject_unknown(raw, _STAGE_NAMES, "stages.")
    defaults = StagesSettings()
    parsed = {
        name: _parse_stage(_section(raw, name), f"stages.{name}", getattr(defaults, name)) if name in raw else getattr(defaults, name)
        for name in _STAGE_NAMES
    }
    return StagesSettings(**parsed)


def _sg_to_dict(cfg: SgConfig) -> JsonObject:
    return {
        "poly_degree": cfg.poly_degree,
        "half_window": cfg.half_window,
        "residual_tolerance": cfg.residual_tolerance,
        "use_optimal_window": cfg.use_optimal_window,
        "replace_outliers": cfg.replace_outliers,
        "ring_width": cfg.ring_width,
        "max_azimuth_gap": cfg.max_azimuth_gap,
        "max_half_window": cfg.max_half_window,
        "sample_count": cfg.sample_count,
        "sample_period": cfg.sample_period,
    }
