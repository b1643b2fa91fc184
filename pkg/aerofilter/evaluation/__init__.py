"""
Synthetic ground truth, detection metrics and latency benchmarks.
"""

from .benchmark import MIN_REPETITIONS, LatencyRow, benchmark
from .metrics import EvalMetrics, Label, LabeledCloud, match_points, score
from .scene import (
    FIELD_TRIAL_AEROSOL,
    AerosolBlob,
    IntensityBand,
    SceneSpec,
    TunnelGeometry,
    default_scene_spec,
    scene_spec_from_mapping,
    desk_scale_config,
    generate_scene,
    standard_scene,
)

__all__: list[str] = [
    "Label",
    "LabeledCloud",
    "EvalMetrics",
    "score",
    "match_points",
    "TunnelGeometry",
    "AerosolBlob",
    "IntensityBand",
    "SceneSpec",
    "FIELD_TRIAL_AEROSOL",
    "default_scene_spec",
    "scene_spec_from_mapping",
    "generate_scene",
    "desk_scale_config",
    "standard_scene",
    "LatencyRow",
    "MIN_REPETITIONS",
    "benchmark",
]
