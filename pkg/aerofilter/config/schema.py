"""JSON-Schema description of the pipeline configuration document."""

import math
from typing import Any, Dict

from .base import SG_PRESET_KEYS, PARAMETER_RANGES, StagesSettings

__all__: list[str] = ["CONFIG_SCHEMA", "build_schema"]


def _ranged(name: str) -> Dict[str, Any]:
    spec = PARAMETER_RANGES[name]
    entry: Dict[str, Any] = {"type": "integer" if spec.integer else "number", "default": spec.initial, "minimum": spec.low}
    if math.isfinite(spec.high):
        entry["maximum"] = spec.high
    return entry


def _object(properties: Dict[str, Any]) -> Dict[str, Any]:
    return {"type": "object", "additionalProperties": False, "properties": properties}


def _stage(default_branches: list[str]) -> Dict[str, Any]:
    return _object(
        {
            "enabled": {"type": "boolean", "default": True},
            "branches": {"type": "array", "items": {"enum": ["close", "long"]}, "uniqueItems": True, "default": default_branches},
        }
    )


def build_schema() -> Dict[str, Any]:
    """Assemble the schema from the parameter ranges and section definitions."""
    nullable_number = {"type": ["number", "null"]}
    defaults = StagesSettings()
    r_d = PARAMETER_RANGES["r_d"]
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": "aerofilter pipeline configuration",
        **_object(
            {
                "r_max": _ranged("r_max"),
                "r_min": _ranged("r_min"),
                "I_th": _ranged("I_th"),
                "r_d": {
                    "type": "array",
                    "items": {"type": "number", "minimum": r_d.low, "maximum": r_d.high},
                    "minItems": 2,
                    "maxItems": 2,
                    "default": list(r_d.initial) if isinstance(r_d.initial, tuple) else r_d.initial,
                    "description": "[close, long]; each within [r_min - 1, r_max - 10]",
                },
                "K_nn": _ranged("K_nn"),
                "r_th": _ranged("r_th"),
                "c_th": _ranged("c_th"),
                "r_nn": _ranged("r_nn"),
                "rss": _object(
                    {
                        **{name: {"type": "number"} for name in ("v_r", "v_f", "a_accel", "a_min_brake", "a_max_brake", "eta")},
                        "envelope": {"type": "array", "items": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}},
                    }
                ),
                "intensity": _object(
                    {
                        "p": _ranged("p"),
                        "clip_fraction": nullable_number,
                        "bins": {"type": "integer", "minimum": 1},
                        "location": {"enum": ["zero", "min"]},
                        "min_samples": {"type": "integer", "minimum": 2},
                    }
                ),
                "sg": _object({branch: _object({key: {} for key in SG_PRESET_KEYS}) for branch in ("close", "long")}),
                "doscor": _object({"query_radius": {"type": "number", "exclusiveMinimum": 0}, "statistic": {"enum": ["point_mean", "pairwise"]}}),
                "ror2d": _object({"k_nn": _ranged("K_nn")}),
                "stages": _object({name: _stage(sorted(str(b) for b in getattr(defaults, name).branches)) for name in ("intensity", "sg", "doscor", "ror2d")}),
                "close_budget": {"type": "integer", "minimum": 1},
                "sample_period": {"type": "number", "exclusiveMinimum": 0},
                "frame_period": {"type": "number", "exclusiveMinimum": 0},
                "parallel_branches": {"type": "boolean"},
                "workers": {"type": "integer"},
            }
        ),
    }


CONFIG_SCHEMA: Dict[str, Any] = build_schema()
