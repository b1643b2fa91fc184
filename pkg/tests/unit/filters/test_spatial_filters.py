"""Tests for radius outlier removal on the XY projection."""

import numpy as np
import pytest

from aerofilter.cloud import PointCloud, build_index
from aerofilter.exceptions.base import ParameterError
from aerofilter.filters import Ror2dConfig, ror2d_filter
from aerofilter.testing import assert_partition, brute_ror2d, create_random_cloud


class TestRor2dConfig:
    """Tests for parameter validation."""

    @pytest.mark.parametrize("kwargs", [{"r_nn": 0.0}, {"k_nn": -1}, {"k_nn": True}])
    def test_invalid(self, kwargs: dict[str, float]) -> None:
        """Non-positive radius and invalid counts raise ParameterError."""
        with pytest.raises(ParameterError):
            Ror2dConfig(**kwargs)


class TestRor2dFilter:
    """Tests for ror2d_filter."""

    @pytest.mark.parametrize("seed", range(4))
    def test_matches_oracle(self, seed: int) -> None:
        """The rejection set equals a brute-force XY count."""
        cloud = create_random_cloud(500, seed=seed, extent=2.0)
        cfg = Ror2dConfig(r_nn=0.3, k_nn=4)
        result = ror2d_filter(cloud, cfg)
        expected = brute_ror2d(cloud, cfg.r_nn, cfg.k_nn)
        assert result.rejected.indices.tolist() == np.flatnonzero(expected).tolist()
        assert_partition(cloud, result.kept, result.rejected)

    def test_height_is_ignored(self) -> None:
        """A vertical column counts as neighbours in the projection and keeps its heights."""
        column = PointCloud([[1.0, 1.0, z] for z in range(8)], np.ones(8))
        result = ror2d_filter(column, Ror2dConfig(r_nn=0.1, k_nn=6))
        assert len(result.rejected) == 0
        np.testing.assert_array_equal(result.kept.xyz[:, 2], np.arange(8.0))

    def test_count_threshold_inclusive(self) -> None:
        """Exactly k_nn neighbours is enough to survive."""
        cloud = PointCloud([[0.0, 0.0, 0.0], [0.05, 0.0, 0.0], [0.0, 0.05, 0.0], [3.0, 3.0, 0.0]], np.ones(4))
        result = ror2d_filter(cloud, Ror2dConfig(r_nn=0.1, k_nn=2))
        assert result.kept.indices.tolist() == [0, 1, 2]

    def test_requires_2d_index(self) -> None:
        """A prebuilt 3D index is refused."""
        cloud = create_random_cloud(10)
        with pytest.raises(ParameterError):
            ror2d_filter(cloud, Ror2dConfig(), index=build_index(cloud, 3))

    def test_accepts_prebuilt_index(self) -> None:
        """A prebuilt 2D index gives the same answer."""
        cloud = create_random_cloud(200, seed=2, extent=1.0)
        cfg = Ror2dConfig(r_nn=0.2, k_nn=3)
        assert ror2d_filter(cloud, cfg, index=build_index(cloud, 2)).rejected.equals(ror2d_filter(cloud, cfg).rejected)


class TestRor2dProperties:
    """Invariances of the XY radius filter."""

    @pytest.mark.parametrize("seed", range(3))
    def test_rotation_about_z(self, seed: int) -> None:
        """Rotating the frame 30 degrees about the vertical axis rejects the same points."""
        cloud = create_random_cloud(1500, seed=seed, extent=3.0)
        angle = np.deg2rad(30.0)
        rotation = np.array([[np.cos(angle), -np.sin(angle), 0.0], [np.sin(angle), np.cos(angle), 0.0], [0.0, 0.0, 1.0]])
        rotated = PointCloud(cloud.xyz @ rotation.T, cloud.intensity)
        cfg = Ror2dConfig(r_nn=0.15, k_nn=6)
        assert ror2d_filter(rotated, cfg).rejected.indices.tolist() == ror2d_filter(cloud, cfg).rejected.indices.tolist()

    def test_monotonic_in_k_nn(self) -> None:
        """Raising k_nn never keeps a point that a lower k_nn rejected."""
        cloud = create_random_cloud(2000, seed=5, extent=3.0)
        previous: set[int] = set()
        for k_nn in range(0, 9):
            rejected = set(ror2d_filter(cloud, Ror2dConfig(r_nn=0.15, k_nn=k_nn)).rejected.indices.tolist())
            assert previous <= rejected
            previous = rejected
        assert previous
