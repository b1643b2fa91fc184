"""The point-cloud container shared by every stage."""

from __future__ import annotations

from typing import Iterable, Iterator, Optional, Sequence

import numpy as np
import numpy.typing as npt

from aerofilter.exceptions.data import CloudDataError
from aerofilter.types import BoolArray, FloatArray, IndexArray

from .point import Point
from .spherical import cartesian_to_spherical

__all__: list[str] = ["PointCloud"]


def _frozen(array: npt.NDArray[np.generic]) -> npt.NDArray[np.generic]:
    array.flags.writeable = False
    return array


class PointCloud:
    """
    An ordered, immutable collection of LiDAR points.

    Coordinates live in an ``(N, 3)`` float64 array, intensities in an
    ``(N,)`` array. ``indices`` holds each point's original position in the
    frame it was ingested from; subsets and merges carry these through, so
    a filtered or rejected cloud can always be related back to its input.

    Parameters
    ----------
    xyz : array_like
        ``(N, 3)`` finite coordinates in metres.
    intensity : array_like
        ``(N,)`` non-negative intensities.
    indices : array_like, optional
        ``(N,)`` original indices. Defaults to ``0 .. N-1``.
    frame_id : str
        Free-form frame identifier.
    timestamp : float, optional
        Acquisition time in seconds.

    Raises
    ------
    CloudDataError
        On shape mismatches, non-finite coordinates or negative intensities.
        The error's ``row`` names the first offending point.
    """

    __slots__ = ("_xyz", "_intensity", "_indices", "frame_id", "timestamp")

    _xyz: FloatArray
    _intensity: FloatArray
    _indices: IndexArray
    frame_id: str
    timestamp: Optional[float]

    def __init__(
        self,
        xyz: npt.ArrayLike,
        intensity: npt.ArrayLike,
        indices: Optional[npt.ArrayLike] = None,
        *,
        frame_id: str = "",
        timestamp: Optional[float] = None,
    ) -> None:
        coords = np.array(xyz, dtype=np.float64, copy=True)
        if coords.size == 0:
            coords = coords.reshape(0, 3)
        if coords.ndim != 2 or coords.shape[1] != 3:
            raise CloudDataError(f"Coordinates must have shape (N, 3), got {coords.shape}")
        values = np.array(intensity, dtype=np.float64, copy=True).reshape(-1)
        if values.shape[0] != coords.shape[0]:
            raise CloudDataError(f"Got {coords.shape[0]} coordinates but {values.shape[0]} intensities")
        bad_rows = np.flatnonzero(~np.isfinite(coords).all(axis=1))
        if bad_rows.size:
            raise CloudDataError(f"Non-finite coordinates at row {int(bad_rows[0])}", row=int(bad_rows[0]))
        bad_rows = np.flatnonzero(~np.isfinite(values) | (values < 0))
        if bad_rows.size:
            raise CloudDataError(f"Intensity must be finite and non-negative (row {int(bad_rows[0])})", row=int(bad_rows[0]))
        if indices is None:
            original = np.arange(coords.shape[0], dtype=np.int64)
        else:
            original = np.array(indices, dtype=np.int64, copy=True).reshape(-1)
            if original.shape[0] != coords.shape[0]:
                raise CloudDataError(f"Got {coords.shape[0]} coordinates but {original.shape[0]} indices")
        if timestamp is not None and not np.isfinite(timestamp):
            raise CloudDataError(f"Timestamp must be finite, got {timestamp}")
        self._xyz = _frozen(coords)
        self._intensity = _frozen(values)
        self._indices = _frozen(original)
        self.frame_id = frame_id
        self.timestamp = None if timestamp is None else float(timestamp)

    @classmethod
    def _trusted(
        cls,
        xyz: FloatArray,
        intensity: FloatArray,
        indices: IndexArray,
        frame_id: str,
        timestamp: Optional[float],
    ) -> PointCloud:
        """Wrap arrays that are already validated (subsets of a valid cloud)."""
        cloud = cls.__new__(cls)
        cloud._xyz = _frozen(xyz)
        cloud._intensity = _frozen(intensity)
        cloud._indices = _frozen(indices)
        cloud.frame_id = frame_id
        cloud.timestamp = timestamp
        return cloud

    @classmethod
    def from_points(cls, points: Iterable[Point], *, frame_id: str = "", timestamp: Optional[float] = None) -> PointCloud:
        """Build a cloud from `Point` values, preserving their order."""
        pts = list(points)
        xyz = np.array([(p.x, p.y, p.z) for p in pts], dtype=np.float64).reshape(-1, 3)
        intensity = np.array([p.intensity for p in pts], dtype=np.float64)
        return cls(xyz, intensity, frame_id=frame_id, timestamp=timestamp)

    @classmethod
    def from_arrays(
        cls,
        xyz: npt.ArrayLike,
        intensity: npt.ArrayLike,
        *,
        frame_id: str = "",
        timestamp: Optional[float] = None,
    ) -> PointCloud:
        """Build a freshly ingested cloud whose indices are ``0 .. N-1``."""
        return cls(xyz, intensity, frame_id=frame_id, timestamp=timestamp)

    @classmethod
    def empty(cls, *, frame_id: str = "", timestamp: Optional[float] = None) -> PointCloud:
        """Return a cloud with no points."""
        return cls(np.empty((0, 3)), np.empty(0), frame_id=frame_id, timestamp=timestamp)

    @classmethod
    def merge(cls, parts: Sequence[PointCloud], *, frame_id: Optional[str] = None, timestamp: Optional[float] = None) -> PointCloud:
        """Concatenate clouds and order the result by original index.

        Parameters
        ----------
        parts : Sequence[PointCloud]
            Clouds holding disjoint subsets of one frame.
        frame_id, timestamp
            Metadata for the result. Defaults to the first part's values.

        Returns
        -------
        PointCloud
            All points of ``parts`` in input-frame order.
        """
        if not parts:
            return cls.empty(frame_id=frame_id or "", timestamp=timestamp)
        first = parts[0]
        xyz = np.concatenate([p.xyz for p in parts], axis=0)
        intensity = np.concatenate([p.intensity for p in parts])
        indices = np.concatenate([p.indices for p in parts])
        order = np.argsort(indices, kind="stable")
        return cls._trusted(
            xyz[order],
            intensity[order],
            indices[order],
            first.frame_id if frame_id is None else frame_id,
            first.timestamp if timestamp is None else timestamp,
        )

    @property
    def xyz(self) -> FloatArray:
        """``(N, 3)`` read-only coordinate array."""
        return self._xyz

    @property
    def intensity(self) -> FloatArray:
        """``(N,)`` read-only intensity array."""
        return self._intensity

    @property
    def indices(self) -> IndexArray:
        """``(N,)`` original indices within the ingested frame."""
        return self._indices

    def __len__(self) -> int:
        return int(self._xyz.shape[0])

    def __repr__(self) -> str:
        return f"PointCloud(n={len(self)}, frame_id={self.frame_id!r}, timestamp={self.timestamp!r})"

    def point(self, position: int) -> Point:
        """Return the point at ``position`` as a `Point`."""
        x, y, z = (float(v) for v in self._xyz[position])
        return Point(x, y, z, float(self._intensity[position]))

    def points(self) -> Iterator[Point]:
        """Iterate over the points in order."""
        for position in range(len(self)):
            yield self.point(position)

    def ranges(self) -> FloatArray:
        """Distance of each point from the sensor origin."""
        return np.sqrt(np.einsum("ij,ij->i", self._xyz, self._xyz))

    def spherical(self) -> tuple[FloatArray, FloatArray, FloatArray]:
        """``(r, theta, phi)`` arrays for all points."""
        return cartesian_to_spherical(self._xyz)

    def subset(self, selector: BoolArray | IndexArray | npt.ArrayLike) -> PointCloud:
        """Return the points selected by a boolean mask or an array of positions.

        Positions are taken in the order given; masks preserve cloud order.
        """
        sel = np.asarray(selector)
        if sel.dtype == np.bool_:
            if sel.shape != (len(self),):
                raise CloudDataError(f"Mask of shape {sel.shape} does not match a cloud of {len(self)} points")
        else:
            sel = sel.astype(np.int64, copy=False).reshape(-1)
        return PointCloud._trusted(self._xyz[sel], self._intensity[sel], self._indices[sel], self.frame_id, self.timestamp)

    def split(self, mask: BoolArray) -> tuple[PointCloud, PointCloud]:
        """Partition the cloud into ``(self[~mask], self[mask])``.

        The second part holds the points where ``mask`` is true, which is how
        filters express their rejections.
        """
        return self.subset(~mask), self.subset(mask)

    def with_xyz(self, xyz: npt.ArrayLike) -> PointCloud:
        """Return a copy with replaced coordinates and the same indices and intensities."""
        return PointCloud(xyz, self._intensity, self._indices, frame_id=self.frame_id, timestamp=self.timestamp)

    def with_metadata(self, *, frame_id: Optional[str] = None, timestamp: Optional[float] = None) -> PointCloud:
        """Return the same points with a different frame id and/or timestamp."""
        return PointCloud._trusted(
            self._xyz,
            self._intensity,
            self._indices,
            self.frame_id if frame_id is None else frame_id,
            self.timestamp if timestamp is None else float(timestamp),
        )

    def equals(self, other: PointCloud) -> bool:
        """Bitwise equality of coordinates, intensities and indices."""
        return (
            np.array_equal(self._xyz, other.xyz)
            and np.array_equal(self._intensity, other.intensity)
            and np.array_equal(self._indices, other.indices)
        )
