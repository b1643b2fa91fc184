"""
Points, clouds, coordinate conversions and the exact spatial index.

Every pipeline stage consumes and produces `PointCloud` values; the
`SpatialIndex` answers the radius and k-nearest queries the statistical
stages are built on.
"""

from .cloud import PointCloud
from .index import NeighborTable, QueryPoint, SpatialIndex, build_index
from .point import Point, SphericalPoint
from .spherical import (
    cart_to_sph,
    cartesian_to_spherical,
    sph_to_cart,
    spherical_to_cartesian,
)

__all__: list[str] = [
    "Point",
    "SphericalPoint",
    "PointCloud",
    "SpatialIndex",
    "NeighborTable",
    "QueryPoint",
    "build_index",
    "cart_to_sph",
    "sph_to_cart",
    "cartesian_to_spherical",
    "spherical_to_cartesian",
]
