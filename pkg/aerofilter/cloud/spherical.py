"""Cartesian to spherical conversion, scalar and vectorised."""

import math

import numpy as np

from aerofilter.types import FloatArray

from .point import Point, SphericalPoint

__all__: list[str] = [
    "cart_to_sph",
    "sph_to_cart",
    "cartesian_to_spherical",
    "spherical_to_cartesian",
]


def cart_to_sph(p: Point) -> SphericalPoint:
    """Convert a point to spherical coordinates.

    ``rho`` is kept squared (``x**2 + y**2``) and the radius is
    ``sqrt(rho + z**2)``. The sensor origin maps to ``(0, 0, 0)``.

    Parameters
    ----------
    p : Point
        The point to convert.

    Returns
    -------
    SphericalPoint
        ``(r, theta, phi)`` with ``theta = atan2(sqrt(rho), z)`` and
        ``phi = atan2(y, x)``.
    """
    rho = p.x * p.x + p.y * p.y
    r = math.sqrt(rho + p.z * p.z)
    theta = math.atan2(math.sqrt(rho), p.z)
    phi = math.atan2(p.y, p.x)
    if phi <= -math.pi:
        phi = math.pi
    return SphericalPoint(r=r, theta=theta, phi=phi)


def sph_to_cart(s: SphericalPoint, intensity: float = 0.0) -> Point:
    """Convert spherical coordinates back to a Cartesian point.

    Parameters
    ----------
    s : SphericalPoint
        Spherical coordinates.
    intensity : float
        Intensity to attach to the resulting point.

    Returns
    -------
    Point
    """
    sin_theta = math.sin(s.theta)
    return Point(
        x=s.r * sin_theta * math.cos(s.phi),
        y=s.r * sin_theta * math.sin(s.phi),
        z=s.r * math.cos(s.theta),
        intensity=intensity,
    )


def cartesian_to_spherical(xyz: FloatArray) -> tuple[FloatArray, FloatArray, FloatArray]:
    """Vectorised `cart_to_sph` over an ``(N, 3)`` coordinate array.

    Returns
    -------
    tuple[FloatArray, FloatArray, FloatArray]
        ``(r, theta, phi)`` arrays of length N, in input order.
    """
    x = xyz[:, 0]
    y = xyz[:, 1]
    z = xyz[:, 2]
    rho = x * x + y * y
    r = np.sqrt(rho + z * z)
    theta = np.arctan2(np.sqrt(rho), z)
    phi = np.arctan2(y, x)
    phi = np.where(phi <= -np.pi, np.pi, phi)
    return r, theta, phi


def spherical_to_cartesian(r: FloatArray, theta: FloatArray, phi: FloatArray) -> FloatArray:
    """Vectorised `sph_to_cart`, returning an ``(N, 3)`` array."""
    sin_theta = np.sin(theta)
    return np.column_stack((r * sin_theta * np.cos(phi), r * sin_theta * np.sin(phi), r * np.cos(theta)))
