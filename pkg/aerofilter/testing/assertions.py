# -*- coding: utf-8 -*-
"""Custom assertion functions for aerofilter tests."""

import numpy as np

from aerofilter.cloud import PointCloud


def assert_partition(source: PointCloud, kept: PointCloud, rejected: PointCloud) -> None:
    """
    Assert that ``kept`` and ``rejected`` split ``source`` exactly.

    Every original index appears in exactly one part, and each point matches
    the source point with that index.

    Raises
    ------
    AssertionError
        On a missing, duplicated or altered point.
    """
    combined = np.concatenate([kept.indices, rejected.indices])
    if combined.shape[0] != len(source):
        raise AssertionError(f"{len(kept)} kept + {len(rejected)} rejected != {len(source)} input points")
    if not np.array_equal(np.sort(combined), np.sort(source.indices)):
        raise AssertionError("Kept and rejected indices do not cover the input indices exactly once")
    lookup = {int(i): p for p, i in enumerate(source.indices)}
    for part in (kept, rejected):
        positions = np.array([lookup[int(i)] for i in part.indices], dtype=np.int64)
        if not np.array_equal(part.xyz, source.xyz[positions]):
            raise AssertionError("A partitioned point has different coordinates from its source")
        if not np.array_equal(part.intensity, source.intensity[positions]):
            raise AssertionError("A partitioned point has a different intensity from its source")


def assert_clouds_identical(first: PointCloud, second: PointCloud) -> None:
    """Assert bitwise equality of coordinates, intensities and indices."""
    if not first.equals(second):
        raise AssertionError(f"Clouds differ: {first!r} vs {second!r}")


def assert_sorted_indices(cloud: PointCloud) -> None:
    """Assert that the cloud is in ascending original-index order."""
    if cloud.indices.size > 1 and not np.all(np.diff(cloud.indices) > 0):
        raise AssertionError("Cloud is not in frame order")
