"""Tests for the partition assertions."""

import numpy as np
import pytest

from aerofilter.cloud import PointCloud
from aerofilter.testing import assert_clouds_identical, assert_partition, assert_sorted_indices, create_random_cloud


class TestAssertPartition:
    """Tests for assert_partition."""

    def test_valid_split(self) -> None:
        """A split by mask passes."""
        cloud = create_random_cloud(20)
        kept, rejected = cloud.split(cloud.intensity < 10)
        assert_partition(cloud, kept, rejected)

    def test_missing_point(self) -> None:
        """Dropping a point fails."""
        cloud = create_random_cloud(5)
        with pytest.raises(AssertionError, match="input points"):
            assert_partition(cloud, cloud.subset([0, 1]), cloud.subset([2, 3]))

    def test_duplicated_point(self) -> None:
        """A point on both sides fails."""
        cloud = create_random_cloud(4)
        with pytest.raises(AssertionError, match="exactly once"):
            assert_partition(cloud, cloud.subset([0, 1]), cloud.subset([1, 2]))

    def test_moved_point(self) -> None:
        """Altered coordinates fail."""
        cloud = create_random_cloud(4)
        kept, rejected = cloud.split(np.array([False, False, True, True]))
        with pytest.raises(AssertionError, match="coordinates"):
            assert_partition(cloud, kept.with_xyz(kept.xyz + 1.0), rejected)


class TestOtherAssertions:
    """Tests for the identity and order assertions."""

    def test_identical(self) -> None:
        """Equal clouds pass; different ones fail."""
        cloud = create_random_cloud(3)
        assert_clouds_identical(cloud, create_random_cloud(3))
        with pytest.raises(AssertionError):
            assert_clouds_identical(cloud, create_random_cloud(3, seed=1))

    def test_sorted(self) -> None:
        """Frame order is ascending original index."""
        assert_sorted_indices(PointCloud(np.zeros((3, 3)), np.ones(3), [1, 4, 9]))
        with pytest.raises(AssertionError):
            assert_sorted_indices(PointCloud(np.zeros((3, 3)), np.ones(3), [4, 1, 9]))
