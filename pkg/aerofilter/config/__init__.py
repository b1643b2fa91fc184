# -*- coding: utf-8 -*-
"""
Configuration handling for aerofilter.

This module provides the validated pipeline configuration (`PipelineConfig`),
the layered `ConfigManager`, the file/environment/memory providers and
`load_config`, which ties them together.
"""

from .base import (
    PARAMETER_RANGES,
    DoscorSettings,
    ParameterRange,
    PipelineConfig,
    Ror2dSettings,
    SgSettings,
    StageSettings,
    StagesSettings,
)
from .loader import load_config
from .manager import ConfigManager, deep_merge
from .providers import EnvProvider, FileProvider, MemoryProvider
from .schema import CONFIG_SCHEMA

__all__: list[str] = [
    "PipelineConfig",
    "ParameterRange",
    "PARAMETER_RANGES",
    "StageSettings",
    "StagesSettings",
    "SgSettings",
    "DoscorSettings",
    "Ror2dSettings",
    "CONFIG_SCHEMA",
    "ConfigManager",
    "deep_merge",
    "EnvProvider",
    "FileProvider",
    "MemoryProvider",
    "load_config",
]
