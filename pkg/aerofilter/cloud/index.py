"""Exact 2D/3D spatial index on top of ``scipy.spatial.cKDTree``."""

from __future__ import annotations

import logging as logging_mod
from dataclasses import dataclass
from typing import Literal, Optional, Union

import numpy as np
from scipy.spatial import cKDTree

from aerofilter.exceptions.base import ParameterError
from aerofilter.types import FloatArray, IndexArray

from .cloud import PointCloud
from .point import Point

__all__: list[str] = ["SpatialIndex", "NeighborTable", "build_index", "QueryPoint"]

logger: logging_mod.Logger = logging_mod.getLogger(__name__)

QueryPoint = Union[Point, int]
"""A query is either an arbitrary `Point` or the position of an indexed member."""

# Relative slack when collecting k-th distance ties.
_TIE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class NeighborTable:
    """Fixed-radius neighbour lists in compressed-row form.

    Neighbours of member ``i`` are ``neighbors[offsets[i]:offsets[i + 1]]``
    with matching ``distances``. A member never lists itself.
    """

    offsets: IndexArray
    neighbors: IndexArray
    distances: FloatArray

    @property
    def counts(self) -> IndexArray:
        """Number of neighbours per member."""
        return np.diff(self.offsets)

    def row(self, position: int) -> tuple[IndexArray, FloatArray]:
        """Neighbours and distances of one member."""
        start, stop = int(self.offsets[position]), int(self.offsets[position + 1])
        return self.neighbors[start:stop], self.distances[start:stop]

    def mean_distances(self) -> FloatArray:
        """Mean neighbour distance per member; NaN where a member has no neighbours."""
        counts = self.counts
        rows = np.repeat(np.arange(counts.shape[0]), counts)
        sums = np.bincount(rows, weights=self.distances, minlength=counts.shape[0])
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.where(counts > 0, sums / np.maximum(counts, 1), np.nan)


class SpatialIndex:
    """
    Immutable exact nearest-neighbour index over the points of a cloud.

    Query results are positions in the indexed cloud (``0 .. N-1``); the
    cloud's original indices are available through `source_indices`. For
    ``dims=2`` the points are projected onto the XY plane before indexing.

    A built index is never mutated, so concurrent read-only queries from
    several threads are safe.

    Parameters
    ----------
    cloud : PointCloud
        The cloud to index. It is not modified.
    dims : {2, 3}
        Dimensionality of the index.
    workers : int
        Worker threads for batch queries, ``-1`` meaning all cores.
    """

    def __init__(self, cloud: PointCloud, dims: Literal[2, 3] = 3, *, workers: int = -1) -> None:
        if dims not in (2, 3):
            raise ParameterError(f"Index dimensionality must be 2 or 3, got {dims}")
        self._dims: int = int(dims)
        self._workers = workers
        self._coords: FloatArray = np.ascontiguousarray(cloud.xyz[:, :dims])
        self._source_indices: IndexArray = cloud.indices
        self._tree: Optional[cKDTree] = cKDTree(self._coords) if len(cloud) else None

    @property
    def dims(self) -> int:
        """Dimensionality of the index (2 or 3)."""
        return self._dims

    @property
    def coords(self) -> FloatArray:
        """Indexed coordinates, projected to ``dims`` columns."""
        return self._coords

    @property
    def source_indices(self) -> IndexArray:
        """Original indices of the indexed points, by position."""
        return self._source_indices

    def __len__(self) -> int:
        return int(self._coords.shape[0])

    def _resolve(self, q: QueryPoint) -> tuple[FloatArray, Optional[int]]:
        if isinstance(q, Point):
            return np.array((q.x, q.y, q.z)[: self._dims], dtype=np.float64), None
        position = int(q)
        if not 0 <= position < len(self):
            raise ParameterError(f"Query position {position} is outside an index of {len(self)} points")
        return self._coords[position], position

    def radius_query(self, q: QueryPoint, radius: float) -> frozenset[int]:
        """All indexed points within Euclidean distance ``<= radius`` of ``q``.

        Parameters
        ----------
        q : Point or int
            Query point, or the position of an indexed member. A member is
            excluded from its own result.
        radius : float
            Search radius in metres.

        Returns
        -------
        frozenset[int]
            Positions of the neighbours.

        Raises
        ------
        ParameterError
            If ``radius`` is not positive.
        """
        if not radius > 0:
            raise ParameterError(f"Search radius must be positive, got {radius}")
        if self._tree is None:
            return frozenset()
        centre, member = self._resolve(q)
        found: list[int] = self._tree.query_ball_point(centre, radius)
        return frozenset(i for i in found if i != member)

    def knn_query(self, q: QueryPoint, k: int) -> list[tuple[int, float]]:
        """The ``k`` nearest indexed points to ``q``, ascending by distance.

        Ties are broken by lower position. Fewer than ``k`` pairs are returned
        when the index is smaller. A member query excludes the member itself.

        Raises
        ------
        ParameterError
            If ``k < 1``.
        """
        if k < 1:
            raise ParameterError(f"k must be at least 1, got {k}")
        if self._tree is None:
            return []
        centre, member = self._resolve(q)
        available = len(self) - (1 if member is not None else 0)
        if available <= 0:
            return []
        wanted = min(k, available)
        fetch = min(wanted + (1 if member is not None else 0), len(self))
        dist, idx = self._tree.query(centre, k=fetch)
        dist = np.atleast_1d(dist)
        idx = np.atleast_1d(idx)
        keep = idx != member if member is not None else np.ones(idx.shape, dtype=bool)
        kth = float(dist[keep][wanted - 1])
        # Collect every point tied with the k-th distance, then order exactly.
        candidates = np.asarray(self._tree.query_ball_point(centre, kth * (1 + _TIE_TOLERANCE) + 1e-300), dtype=np.int64)
        if member is not None:
            candidates = candidates[candidates != member]
        distances = np.sqrt(((self._coords[candidates] - centre) ** 2).sum(axis=1))
        order = np.lexsort((candidates, distances))[:wanted]
        return [(int(candidates[i]), float(distances[i])) for i in order]

    def neighbor_counts(self, radius: float | FloatArray, *, limit: Optional[int] = None) -> IndexArray:
        """Per-member count of other members within ``radius``.

        Parameters
        ----------
        radius : float or FloatArray
            One radius for every member, or an ``(N,)`` array of per-member radii.
        limit : int, optional
            Saturate the counts at ``limit``. Each member then stops after
            ``limit + 1`` hits, which is much cheaper in dense neighbourhoods.
            Requires a scalar ``radius``.
        """
        if not np.all(np.asarray(radius) > 0):
            raise ParameterError(f"Search radius must be positive, got {radius}")
        if limit is not None and (limit < 0 or np.ndim(radius) != 0):
            raise ParameterError(f"limit needs a scalar radius and a non-negative value, got limit={limit}")
        if self._tree is None:
            return np.zeros(0, dtype=np.int64)
        if limit is None:
            counts = self._tree.query_ball_point(self._coords, radius, return_length=True, workers=self._workers)
            return np.asarray(counts, dtype=np.int64) - 1
        bound = float(np.nextafter(float(radius), np.inf))
        # A list-valued k keeps the result two-dimensional for every limit.
        dist, _ = self._tree.query(self._coords, k=list(range(1, limit + 2)), distance_upper_bound=bound, workers=self._workers)
        hits = np.count_nonzero(np.isfinite(np.asarray(dist)), axis=1)
        return np.minimum(hits - 1, limit).astype(np.int64)

    def neighbor_table(self, radius: float) -> NeighborTable:
        """Fixed-radius neighbour lists of every member, self excluded.

        All pairs within ``radius`` come from one dual-tree traversal; each row
        is ordered by distance, then by position.
        """
        if not radius > 0:
            raise ParameterError(f"Search radius must be positive, got {radius}")
        n = len(self)
        if self._tree is None or n == 0:
            empty_i = np.zeros(0, dtype=np.int64)
            return NeighborTable(np.zeros(1, dtype=np.int64), empty_i, np.zeros(0, dtype=np.float64))
        pairs = np.asarray(self._tree.query_pairs(radius, output_type="ndarray"), dtype=np.int64).reshape(-1, 2)
        rows = np.concatenate([pairs[:, 0], pairs[:, 1]])
        cols = np.concatenate([pairs[:, 1], pairs[:, 0]])
        distances = np.sqrt(((self._coords[rows] - self._coords[cols]) ** 2).sum(axis=1))
        order = np.lexsort((cols, distances, rows))
        offsets = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=n), out=offsets[1:])
        return NeighborTable(offsets, cols[order], distances[order])

    def knn_table(self, k: int) -> tuple[IndexArray, FloatArray]:
        """The ``k`` nearest other members of every member.

        Returns
        -------
        tuple[IndexArray, FloatArray]
            ``(N, k')`` neighbour positions and distances with
            ``k' = min(k, N - 1)``, each row ascending by distance.
        """
        if k < 1:
            raise ParameterError(f"k must be at least 1, got {k}")
        n = len(self)
        k_eff = min(k, n - 1)
        if self._tree is None or k_eff <= 0:
            return np.zeros((n, 0), dtype=np.int64), np.zeros((n, 0), dtype=np.float64)
        dist, idx = self._tree.query(self._coords, k=k_eff + 1, workers=self._workers)
        dist = np.asarray(dist, dtype=np.float64).reshape(n, k_eff + 1)
        idx = np.asarray(idx, dtype=np.int64).reshape(n, k_eff + 1)
        is_self = idx == np.arange(n)[:, None]
        # Stable sort moves the self column (when present) to the end of each row.
        order = np.argsort(is_self, axis=1, kind="stable")[:, :k_eff]
        return np.take_along_axis(idx, order, axis=1), np.take_along_axis(dist, order, axis=1)


def build_index(cloud: PointCloud, dims: Literal[2, 3] = 3, *, workers: int = -1) -> SpatialIndex:
    """Build an exact spatial index over ``cloud``.

    Parameters
    ----------
    cloud : PointCloud
        Points to index; an empty cloud yields a valid empty index.
    dims : {2, 3}
        3 for full coordinates, 2 to project onto the XY plane first.
    workers : int
        Threads used by batch queries (``-1`` for all cores).

    Returns
    -------
    SpatialIndex
    """
    index = SpatialIndex(cloud, dims, workers=workers)
    logger.debug("Built %dD index over %d points", index.dims, len(index))
    return index
