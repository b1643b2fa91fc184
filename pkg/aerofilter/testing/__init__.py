# -*- coding: utf-8 -*-
"""
Testing utilities for aerofilter.

Factories for clouds and scenes, brute-force oracles for the filters,
partition assertions and temporary-environment helpers.
"""

from .assertions import assert_clouds_identical, assert_partition, assert_sorted_indices
from .factories import (
    create_frame_stream,
    create_grid_cloud,
    create_labeled_scene,
    create_pipeline_config,
    create_random_cloud,
    create_ring_scan,
)
from .helpers import temp_config_file, temp_env_vars
from .oracles import (
    brute_doscor,
    brute_knn,
    brute_radius,
    brute_ror2d,
    grid_search_weibull,
    pairwise_distances,
    windowed_smoothing,
)

__all__: list[str] = [
    # Factories
    "create_random_cloud",
    "create_grid_cloud",
    "create_ring_scan",
    "create_labeled_scene",
    "create_frame_stream",
    "create_pipeline_config",
    # Oracles
    "pairwise_distances",
    "brute_radius",
    "brute_knn",
    "brute_doscor",
    "brute_ror2d",
    "windowed_smoothing",
    "grid_search_weibull",
    # Assertions
    "assert_partition",
    "assert_clouds_identical",
    "assert_sorted_indices",
    # Helpers
    "temp_env_vars",
    "temp_config_file",
]
