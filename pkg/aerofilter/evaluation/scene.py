"""
Synthetic tunnel scenes with aerosol blobs and ground-truth labels.

The sensor sits at the origin of a tunnel running along x. Floor, ceiling
and both walls are sampled on a regular grid; aerosol blobs are sampled in
balls whose mean point spacing is at least ``min_spacing_ratio`` times the
wall spacing, and take Weibull-distributed intensities.
"""

from __future__ import annotations

import logging as logging_mod
import math
from dataclasses import dataclass, replace
from typing import Any, Mapping

import numpy as np

from aerofilter.cloud import PointCloud
from aerofilter.config import DoscorSettings, PipelineConfig
from aerofilter.exceptions.base import ParameterError
from aerofilter.exceptions.config import InvalidConfigError, UnknownConfigKeyError
from aerofilter.filters.intensity import WeibullParams
from aerofilter.types import FloatArray
from aerofilter.utils.type_guards import assert_type, is_int, is_mapping, is_number

from .metrics import Label, LabeledCloud

__all__: list[str] = [
    "TunnelGeometry",
    "AerosolBlob",
    "IntensityBand",
    "SceneSpec",
    "FIELD_TRIAL_AEROSOL",
    "default_scene_spec",
    "scene_spec_from_mapping",
    "generate_scene",
    "desk_scale_config",
    "standard_scene",
]

logger: logging_mod.Logger = logging_mod.getLogger(__name__)

FIELD_TRIAL_AEROSOL = WeibullParams(alpha=0.771938, gamma=3.613051, mu=0.0)
"""Aerosol intensity fit of the first field trial."""

# DOSCOR query ball of the desk-scale configuration, in wall spacings.
_QUERY_BALL_SPACINGS = 1.8


@dataclass(frozen=True)
class TunnelGeometry:
    """Tunnel box in metres; x spans ``[-length/2, length/2]``, y spans ``[-width/2, width/2]``."""

    length: float = 30.0
    width: float = 4.0
    height: float = 3.0
    spacing: float = 0.1
    floor_height: float = -1.0

    @property
    def ceiling_height(self) -> float:
        return self.floor_height + self.height

    def contains_ball(self, center: tuple[float, float, float], radius: float) -> bool:
        x, y, z = center
        return (
            abs(x) + radius <= self.length / 2
            and abs(y) + radius <= self.width / 2
            and self.floor_height <= z - radius
            and z + radius <= self.ceiling_height
        )


@dataclass(frozen=True)
class AerosolBlob:
    """A ball of aerosol returns; ``falloff > 0`` concentrates points towards the centre."""

    center: tuple[float, float, float]
    radius: float
    count: int
    falloff: float = 0.0

    @property
    def mean_spacing(self) -> float:
        """Cube root of the ball volume per point."""
        return (4.0 / 3.0 * math.pi * self.radius**3 / max(self.count, 1)) ** (1.0 / 3.0)


@dataclass(frozen=True)
class IntensityBand:
    """Uniform environment intensities in ``[mean - spread, mean + spread]``."""

    mean: float = 20.0
    spread: float = 8.0


@dataclass(frozen=True)
class SceneSpec:
    """Everything `generate_scene` needs; the same spec always yields the same scene."""

    geometry: TunnelGeometry = TunnelGeometry()
    blobs: tuple[AerosolBlob, ...] = ()
    environment_intensity: IntensityBand = IntensityBand()
    aerosol_intensity: WeibullParams = FIELD_TRIAL_AEROSOL
    range_noise_sigma: float = 0.005
    seed: int = 0
    min_spacing_ratio: float = 2.0


def default_scene_spec(seed: int = 0) -> SceneSpec:
    """Desk-scale scene: the default tunnel with three 1000-point blobs in the long range."""
    blobs = (
        AerosolBlob((8.0, 0.0, 0.5), 1.3, 1000),
        AerosolBlob((-10.0, 0.4, 0.4), 1.3, 1000),
        AerosolBlob((12.5, -0.3, 0.6), 1.3, 1000),
    )
    return SceneSpec(blobs=blobs, seed=seed)


def _validate(spec: SceneSpec) -> None:
    g = spec.geometry
    if not (g.length > 0 and g.width > 0 and g.height > 0 and g.spacing > 0):
        raise ParameterError(f"Tunnel dimensions and spacing must be positive, got {g}")
    if g.spacing > min(g.length, g.width, g.height):
        raise ParameterError(f"Wall spacing {g.spacing} exceeds the tunnel's smallest dimension")
    if not g.floor_height < 0 < g.ceiling_height:
        raise ParameterError("The sensor origin must lie between floor and ceiling")
    if spec.range_noise_sigma < 0:
        raise ParameterError(f"range_noise_sigma must be non-negative, got {spec.range_noise_sigma}")
    band = spec.environment_intensity
    if band.spread < 0 or band.mean - band.spread < 0:
        raise ParameterError(f"Environment intensities must be non-negative, got {band}")
    for i, blob in enumerate(spec.blobs):
        if not blob.radius > 0 or blob.count < 0 or blob.falloff < 0:
            raise ParameterError(f"Blob {i} needs a positive radius, a non-negative count and falloff")
        if not g.contains_ball(blob.center, blob.radius):
            raise ParameterError(f"Blob {i} at {blob.center} with radius {blob.radius} leaves the tunnel")
        if blob.count and blob.mean_spacing < spec.min_spacing_ratio * g.spacing:
            raise ParameterError(
                f"Blob {i} spacing {blob.mean_spacing:.4f} m is below {spec.min_spacing_ratio:g} x the wall spacing {g.spacing} m"
            )


def _axis(low: float, high: float, spacing: float) -> FloatArray:
    steps = int(math.floor((high - low) / spacing + 1e-9))
    return low + spacing * np.arange(steps + 1, dtype=np.float64)


def _tunnel_surfaces(g: TunnelGeometry) -> FloatArray:
    xs = _axis(-g.length / 2, g.length / 2, g.spacing)
    ys = _axis(-g.width / 2, g.width / 2, g.spacing)
    zs = _axis(g.floor_height, g.ceiling_height, g.spacing)
    # Walls skip the floor and ceiling rows those surfaces already hold.
    zs_wall = zs[(zs > g.floor_height + 1e-9) & (zs < g.ceiling_height - 1e-9)]
    fx, fy = np.meshgrid(xs, ys, indexing="ij")
    wx, wz = np.meshgrid(xs, zs_wall, indexing="ij")
    floor = np.column_stack([fx.ravel(), fy.ravel(), np.full(fx.size, g.floor_height)])
    ceiling = np.column_stack([fx.ravel(), fy.ravel(), np.full(fx.size, g.ceiling_height)])
    left = np.column_stack([wx.ravel(), np.full(wx.size, g.width / 2), wz.ravel()])
    right = np.column_stack([wx.ravel(), np.full(wx.size, -g.width / 2), wz.ravel()])
    return np.concatenate([floor, ceiling, left, right])


def _blob_points(blob: AerosolBlob, rng: np.random.Generator) -> FloatArray:
    directions = rng.standard_normal((blob.count, 3))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    radii = blob.radius * rng.random(blob.count) ** ((1.0 + 2.0 * blob.falloff) / 3.0)
    return np.asarray(blob.center, dtype=np.float64) + directions * radii[:, None]


def generate_scene(spec: SceneSpec) -> LabeledCloud:
    """Sample a labelled tunnel scene.

    Raises
    ------
    ParameterError
        For degenerate geometry, blobs outside the tunnel or blobs denser than
        ``min_spacing_ratio`` allows.
    """
    _validate(spec)
    rng = np.random.default_rng(spec.seed)
    environment = _tunnel_surfaces(spec.geometry)
    if spec.range_noise_sigma > 0:
        ranges = np.linalg.norm(environment, axis=1)
        noisy = ranges + rng.normal(0.0, spec.range_noise_sigma, ranges.shape[0])
        environment = environment * (noisy / np.where(ranges > 0, ranges, 1.0))[:, None]
    band = spec.environment_intensity
    env_intensity = rng.uniform(band.mean - band.spread, band.mean + band.spread, environment.shape[0])

    blob_xyz = [_blob_points(blob, rng) for blob in spec.blobs if blob.count]
    aerosol = np.concatenate(blob_xyz) if blob_xyz else np.empty((0, 3))
    weibull = spec.aerosol_intensity
    aerosol_intensity = weibull.mu + weibull.alpha * rng.weibull(weibull.gamma, aerosol.shape[0])

    xyz = np.concatenate([environment, aerosol])
    intensity = np.concatenate([env_intensity, aerosol_intensity])
    labels = np.concatenate([np.full(environment.shape[0], Label.ENVIRONMENT, dtype=np.int8), np.full(aerosol.shape[0], Label.AEROSOL, dtype=np.int8)])
    order = rng.permutation(xyz.shape[0])
    cloud = PointCloud(xyz[order], intensity[order], frame_id=f"scene-{spec.seed}")
    logger.debug("Generated scene with %d environment and %d aerosol points", environment.shape[0], aerosol.shape[0])
    return LabeledCloud(cloud, labels[order])


def desk_scale_config(spec: SceneSpec | None = None) -> PipelineConfig:
    """Initial-value configuration with the DOSCOR query ball scaled to the scene's wall spacing.

    The default 0.05 m ball suits sensor-native density. On walls sampled at
    ``spacing`` the ball holds a surface point's eight grid neighbours (axis
    and diagonal, up to ``sqrt(2) * spacing``) and stays clear of the next
    ring at ``2 * spacing``, while a blob point sees fewer than three
    neighbours on average, before and after the intensity threshold is refit.
    """
    spacing = (spec or SceneSpec()).geometry.spacing
    return PipelineConfig(doscor=DoscorSettings(query_radius=_QUERY_BALL_SPACINGS * spacing))


def standard_scene(n_points: int, seed: int = 0) -> LabeledCloud:
    """Benchmark workload of exactly ``n_points`` points drawn from the desk-scale scene.

    Wall spacing is tightened until the scene holds enough points, then a
    seeded subsample is taken in original order.
    """
    if n_points < 0:
        raise ParameterError(f"n_points must be non-negative, got {n_points}")
    spec = default_scene_spec(seed)
    scene = generate_scene(spec)
    while len(scene) < n_points:
        geometry = replace(spec.geometry, spacing=spec.geometry.spacing * 0.9)
        spec = replace(spec, geometry=geometry)
        scene = generate_scene(spec)
    if len(scene) == n_points:
        return scene
    keep = np.sort(np.random.default_rng(seed).choice(len(scene), size=n_points, replace=False))
    cloud = PointCloud(scene.cloud.xyz[keep], scene.cloud.intensity[keep], frame_id=f"standard-{n_points}-{seed}")
    return LabeledCloud(cloud, scene.labels[keep])


def _triple(value: object, name: str) -> tuple[float, float, float]:
    if not isinstance(value, (list, tuple)) or len(value) != 3 or not all(is_number(v) for v in value):
        raise InvalidConfigError(f"{name} must be a list of three numbers, got {value!r}", parameter=name)
    return (float(value[0]), float(value[1]), float(value[2]))


def _section(data: Mapping[str, Any], key: str, allowed: frozenset[str]) -> Mapping[str, Any]:
    section = data.get(key, {})
    assert_type(section, is_mapping, "object", key)
    unknown = sorted(set(section) - allowed)
    if unknown:
        raise UnknownConfigKeyError(f"{key}.{unknown[0]}")
    return section


def scene_spec_from_mapping(data: Mapping[str, Any]) -> SceneSpec:
    """
    Build a `SceneSpec` from a JSON-style mapping.

    Missing keys take the desk-scale defaults; a missing ``blobs`` list keeps
    the three default blobs. Intensity and Weibull sections use the field
    names of `IntensityBand` and `WeibullParams`.

    Raises
    ------
    UnknownConfigKeyError
        For a key the scene does not define.
    InvalidConfigError
        For a malformed value or a spec `generate_scene` would refuse.
    """
    allowed = frozenset({"geometry", "blobs", "environment_intensity", "aerosol_intensity", "range_noise_sigma", "seed", "min_spacing_ratio"})
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise UnknownConfigKeyError(unknown[0])
    seed = data.get("seed", 0)
    assert_type(seed, is_int, "integer", "seed")
    base = default_scene_spec(int(seed))
    try:
        geometry = TunnelGeometry(**{k: float(v) for k, v in _section(data, "geometry", frozenset(TunnelGeometry.__dataclass_fields__)).items()})
        band = IntensityBand(**{k: float(v) for k, v in _section(data, "environment_intensity", frozenset({"mean", "spread"})).items()})
        aerosol_section = _section(data, "aerosol_intensity", frozenset({"alpha", "gamma", "mu"}))
        aerosol = WeibullParams(**{k: float(v) for k, v in aerosol_section.items()}) if aerosol_section else base.aerosol_intensity
        blobs = base.blobs
        if "blobs" in data:
            raw_blobs = data["blobs"]
            if not isinstance(raw_blobs, list):
                raise InvalidConfigError(f"blobs must be a list, got {type(raw_blobs).__name__}", parameter="blobs")
            parsed: list[AerosolBlob] = []
            for i, raw in enumerate(raw_blobs):
                assert_type(raw, is_mapping, "object", f"blobs[{i}]")
                extra = sorted(set(raw) - {"center", "radius", "count", "falloff"})
                if extra:
                    raise UnknownConfigKeyError(f"blobs[{i}].{extra[0]}")
                count = raw.get("count", 1000)
                assert_type(count, is_int, "integer", f"blobs[{i}].count")
                parsed.append(
                    AerosolBlob(
                        center=_triple(raw.get("center"), f"blobs[{i}].center"),
                        radius=float(raw.get("radius", 1.3)),
                        count=int(count),
                        falloff=float(raw.get("falloff", 0.0)),
                    )
                )
            blobs = tuple(parsed)
        spec = replace(
            base,
            geometry=geometry,
            blobs=blobs,
            environment_intensity=band,
            aerosol_intensity=aerosol,
            range_noise_sigma=float(data.get("range_noise_sigma", base.range_noise_sigma)),
            min_spacing_ratio=float(data.get("min_spacing_ratio", base.min_spacing_ratio)),
        )
        _validate(spec)
    except (TypeError, ValueError) as e:
        raise InvalidConfigError(f"Invalid scene spec: {e}") from e
    return spec
