"""
The filtering stages of the aerosol pipeline and the comparison baselines.

Each stage is a pure function of a `PointCloud` and a frozen config that
partitions its input into kept and rejected points.
"""

from .baselines import BaselineConfig, BaselineVariant, baseline_filter
from .doscor import (
    DoscorConfig,
    DoscorResult,
    DoscorStatistic,
    NeighborStats,
    doscor_filter,
    dynamic_thresholds,
    neighbor_stats,
    static_threshold,
)
from .intensity import (
    IntensityHistogram,
    IntensitySettings,
    IntensityThreshold,
    LocationMode,
    ReferenceFit,
    WeibullParams,
    adapt_threshold,
    filter_by_intensity,
    fit_weibull,
    initial_threshold,
    intensity_histogram,
    intensity_threshold,
    weibull_cdf,
    weibull_log_likelihood,
    weibull_mean,
    weibull_pdf,
    weibull_quantile,
)
from .range_gate import (
    RangeGateState,
    RangeSplit,
    RssConfig,
    compute_r_max,
    longitudinal_safe_distance,
    split_by_range,
    update_r_min,
)
from .result import Branch, StageResult
from .savgol import (
    ScanSequence,
    SgConfig,
    SgResult,
    build_scan_sequences,
    optimal_window,
    sg_coefficients,
    sg_cost,
    sg_fit,
    sg_smooth_and_reject,
    smooth_ranges,
)
from .spatial import Ror2dConfig, ror2d_filter

__all__: list[str] = [
    # Shared
    "Branch",
    "StageResult",
    # Range gate
    "RssConfig",
    "RangeGateState",
    "RangeSplit",
    "longitudinal_safe_distance",
    "compute_r_max",
    "update_r_min",
    "split_by_range",
    # Intensity
    "WeibullParams",
    "IntensityThreshold",
    "IntensitySettings",
    "IntensityHistogram",
    "LocationMode",
    "ReferenceFit",
    "weibull_pdf",
    "weibull_cdf",
    "weibull_quantile",
    "weibull_mean",
    "weibull_log_likelihood",
    "fit_weibull",
    "intensity_threshold",
    "initial_threshold",
    "adapt_threshold",
    "filter_by_intensity",
    "intensity_histogram",
    # DOSCOR
    "DoscorConfig",
    "DoscorStatistic",
    "NeighborStats",
    "DoscorResult",
    "neighbor_stats",
    "static_threshold",
    "dynamic_thresholds",
    "doscor_filter",
    # Savitzky-Golay
    "SgConfig",
    "ScanSequence",
    "SgResult",
    "sg_coefficients",
    "sg_fit",
    "sg_cost",
    "smooth_ranges",
    "build_scan_sequences",
    "optimal_window",
    "sg_smooth_and_reject",
    # Spatial and baselines
    "Ror2dConfig",
    "ror2d_filter",
    "BaselineVariant",
    "BaselineConfig",
    "baseline_filter",
]
