# -*- coding: utf-8 -*-
"""
aerofilter: real-time removal of aerosol returns from LiDAR point clouds.

Each frame is gated by range into a close and a long branch. Both branches
pass an adaptive intensity threshold and a Savitzky-Golay range check; the
long branch additionally passes a two-phase density filter (DOSCOR) and a
2D radius outlier removal. Ranges and the intensity threshold adapt once
per second from the frames themselves.
"""

import importlib.metadata
import logging as logging_mod

# Core components re-exported for easier access
from .cloud import Point, PointCloud, SpatialIndex, build_index
from .config import ConfigManager, EnvProvider, FileProvider, MemoryProvider, PipelineConfig, load_config
from .exceptions.base import AeroFilterError, ConfigurationError, DataError, ParameterError
from .exceptions.config import ConfigLoadError, InvalidConfigError, UnknownConfigKeyError
from .exceptions.data import CloudDataError, CloudFormatError, LabelError
from .exceptions.filters import FilterError, NeighborStatsError, WeibullFitError
from .exceptions.pipeline import StreamError
from .filters import Branch, WeibullParams
from .pipeline import FilterReport, FrameResult, PipelineState, process_frame, run_stream

try:
    __version__: str = importlib.metadata.version("aerofilter")
except importlib.metadata.PackageNotFoundError:  # pragma: no cover - fallback for local use
    __version__ = "0.0.0"

# Define public API
__all__: list[str] = [
    # Clouds
    "Point",
    "PointCloud",
    "SpatialIndex",
    "build_index",
    # Config
    "PipelineConfig",
    "ConfigManager",
    "EnvProvider",
    "FileProvider",
    "MemoryProvider",
    "load_config",
    # Pipeline
    "Branch",
    "WeibullParams",
    "PipelineState",
    "FilterReport",
    "FrameResult",
    "process_frame",
    "run_stream",
    # Exceptions
    "AeroFilterError",
    "ConfigurationError",
    "ParameterError",
    "DataError",
    "InvalidConfigError",
    "UnknownConfigKeyError",
    "ConfigLoadError",
    "CloudDataError",
    "CloudFormatError",
    "LabelError",
    "FilterError",
    "WeibullFitError",
    "NeighborStatsError",
    "StreamError",
]

# Configure null handler for library logging
logging_mod.getLogger(__name__).addHandler(logging_mod.NullHandler())
