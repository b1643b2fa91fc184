"""Single-point value types in Cartesian and spherical coordinates."""

import math
from dataclasses import dataclass

from aerofilter.exceptions.data import CloudDataError

__all__: list[str] = ["Point", "SphericalPoint"]


@dataclass(frozen=True, slots=True)
class Point:
    """A LiDAR return in the sensor frame (x forward, y left, z up), in metres.

    Parameters
    ----------
    x, y, z : float
        Finite Cartesian coordinates.
    intensity : float
        Non-negative reflectance value.

    Raises
    ------
    CloudDataError
        If a coordinate is not finite or the intensity is negative.
    """

    x: float
    y: float
    z: float
    intensity: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y) and math.isfinite(self.z)):
            raise CloudDataError(f"Point coordinates must be finite, got ({self.x}, {self.y}, {self.z})")
        if not math.isfinite(self.intensity) or self.intensity < 0:
            raise CloudDataError(f"Point intensity must be a finite non-negative value, got {self.intensity}")


@dataclass(frozen=True, slots=True)
class SphericalPoint:
    """Spherical coordinates of a point.

    ``r`` is the distance from the sensor, ``theta`` the inclination from the
    z axis in ``[0, pi]`` and ``phi`` the azimuth in ``(-pi, pi]``.
    """

    r: float
    theta: float
    phi: float
