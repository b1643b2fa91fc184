import os
import pathlib
import sys

import numpy as np
import pytest

# Add project root to sys.path for aerofilter imports, but prevent test modules
# from being importable as top-level to avoid mypy module name conflicts
PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
if PROJECT_ROOT not in sys.path:
    sys.path.insert(0, PROJECT_ROOT)

from aerofilter.cloud import PointCloud  # noqa: E402
from aerofilter.utils.logging import clear_log_context  # noqa: E402

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture
def rng() -> np.random.Generator:
    """A seeded generator, fresh for every test."""
    return np.random.default_rng(12345)


@pytest.fixture
def fixtures_dir() -> pathlib.Path:
    return FIXTURES


@pytest.fixture
def small_cloud() -> PointCloud:
    """Five points with distinct ranges and intensities."""
    xyz = np.array(
        [
            [1.0, 0.0, 0.0],
            [0.0, 3.0, 0.0],
            [0.0, 0.0, -6.0],
            [12.0, 5.0, 0.0],
            [40.0, 0.0, 0.0],
        ]
    )
    return PointCloud(xyz, [0.5, 1.5, 2.5, 10.0, 20.0], frame_id="small", timestamp=0.0)


@pytest.fixture(autouse=True)
def _reset_log_context() -> None:
    clear_log_context()
