"""
Savitzky-Golay smoothing of range sequences and residual-based outlier rejection.

Points are ordered into scan sequences (inclination ring, then azimuth).
Each sequence's ranges are smoothed by a centred least-squares polynomial
of degree ``n`` over ``2m + 1`` samples; a point whose range departs from
the smoothed value by more than the residual tolerance is an outlier. Only
points at or beyond the branch's ``r_d`` take part.
"""

from __future__ import annotations

import logging as logging_mod
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple, Optional, Union

import numpy as np
import numpy.typing as npt
from scipy import linalg, special

from aerofilter.cloud import PointCloud
from aerofilter.exceptions.base import ParameterError
from aerofilter.types import FloatArray, IndexArray

from .result import Branch

__all__: list[str] = [
    "SgConfig",
    "ScanSequence",
    "SgResult",
    "R_D_DEFAULT",
    "sg_coefficients",
    "sg_fit",
    "sg_cost",
    "smooth_ranges",
    "estimate_noise_variance",
    "build_scan_sequences",
    "optimal_window_length",
    "optimal_window",
    "sg_smooth_and_reject",
]

logger: logging_mod.Logger = logging_mod.getLogger(__name__)

R_D_DEFAULT = (4.0, 20.0)
DEFAULT_FRAME_PERIOD = 0.1
_THETA_DECIMALS = 6


@dataclass(frozen=True)
class SgConfig:
    """Smoothing and rejection parameters for one branch.

    Parameters
    ----------
    poly_degree : int
        Polynomial degree ``n``.
    half_window : int
        Half window ``m``; the window holds ``2m + 1`` samples and must be
        longer than ``n``.
    residual_tolerance : float
        A point is an outlier when ``|r - r_hat|`` exceeds this, in metres.
    r_d : tuple[float, float]
        Minimum range for the close and the long branch.
    use_optimal_window : bool
        Choose ``m`` per sequence from the noise and roughness estimates.
    replace_outliers : bool
        Keep outliers, moved along their ray to the smoothed range.
    ring_width : float, optional
        Inclination bucket width in radians; estimated when ``None``.
    max_azimuth_gap : float
        A sequence is split where consecutive azimuths differ by more.
    max_half_window : int
        Upper bound on ``m`` in optimal-window mode.
    sample_count : int, optional
        Cap on the finite-difference terms of the roughness estimate.
    sample_period : float, optional
        Sampling period in seconds; the frame period when ``None``.
    """

    poly_degree: int = 3
    half_window: int = 4
    residual_tolerance: float = 0.3
    r_d: tuple[float, float] = R_D_DEFAULT
    use_optimal_window: bool = False
    replace_outliers: bool = False
    ring_width: Optional[float] = None
    max_azimuth_gap: float = 0.1
    max_half_window: int = 12
    sample_count: Optional[int] = None
    sample_period: Optional[float] = None

    def __post_init__(self) -> None:
        if self.poly_degree < 0:
            raise ParameterError(f"poly_degree must be non-negative, got {self.poly_degree}")
        if self.half_window < 0 or 2 * self.half_window + 1 <= self.poly_degree:
            raise ParameterError(f"Window 2*{self.half_window}+1 must be longer than the polynomial degree {self.poly_degree}")
        if not self.residual_tolerance > 0:
            raise ParameterError(f"residual_tolerance must be positive, got {self.residual_tolerance}")
        close, far = self.r_d
        if close < 0 or far < 0 or close > far:
            raise ParameterError(f"r_d must be a non-negative (close, long) pair with close <= long, got {self.r_d}")
        object.__setattr__(self, "r_d", (float(close), float(far)))
        if self.ring_width is not None and not self.ring_width > 0:
            raise ParameterError(f"ring_width must be positive, got {self.ring_width}")
        if not self.max_azimuth_gap > 0:
            raise ParameterError(f"max_azimuth_gap must be positive, got {self.max_azimuth_gap}")
        if self.max_half_window < 1:
            raise ParameterError(f"max_half_window must be at least 1, got {self.max_half_window}")
        if self.sample_count is not None and self.sample_count < 1:
            raise ParameterError(f"sample_count must be positive, got {self.sample_count}")
        if self.sample_period is not None and not self.sample_period > 0:
            raise ParameterError(f"sample_period must be positive, got {self.sample_period}")

    @classmethod
    def close_preset(cls, **overrides: object) -> SgConfig:
        """Close-range preset: cubic over 9 samples."""
        return cls(**{"poly_degree": 3, "half_window": 4, **overrides})  # type: ignore[arg-type]

    @classmethod
    def long_preset(cls, **overrides: object) -> SgConfig:
        """Long-range preset: quadratic over 15 samples."""
        return cls(**{"poly_degree": 2, "half_window": 7, **overrides})  # type: ignore[arg-type]

    @property
    def window(self) -> int:
        """Window length ``2m + 1``."""
        return 2 * self.half_window + 1

    def r_d_for(self, segment: Branch | str) -> float:
        """Minimum range for ``segment``."""
        return self.r_d[0] if Branch(segment) is Branch.CLOSE else self.r_d[1]


@dataclass(frozen=True)
class ScanSequence:
    """One azimuth-ordered run of points within an inclination ring."""

    ring: int
    positions: IndexArray
    indices: IndexArray
    phi: FloatArray = field(repr=False)
    r: FloatArray = field(repr=False)

    def __len__(self) -> int:
        return int(self.positions.shape[0])


class SgResult(NamedTuple):
    """Outcome of `sg_smooth_and_reject`."""

    kept: PointCloud
    rejected: PointCloud
    replaced: int = 0
    sequences_filtered: int = 0


def _check_window(n: int, m: int) -> None:
    if n < 0 or m < 0 or 2 * m + 1 <= n:
        raise ParameterError(f"Savitzky-Golay window 2*{m}+1 must be longer than the polynomial degree {n}")


def _vandermonde(n: int, m: int) -> FloatArray:
    offsets = np.arange(-m, m + 1, dtype=np.float64)
    return np.vander(offsets, n + 1, increasing=True)


@lru_cache(maxsize=128)
def sg_coefficients(n: int, m: int) -> FloatArray:
    """Centre-point smoothing weights of a degree-``n`` fit over ``2m + 1`` samples.

    This is the row of ``(A^T A)^-1 A^T`` that evaluates the fitted
    polynomial at offset 0, with ``A[i][k] = i**k`` for ``i`` in ``[-m, m]``.

    Returns
    -------
    FloatArray
        Read-only weights of length ``2m + 1``.

    Raises
    ------
    ParameterError
        If ``2m + 1 <= n``.
    """
    _check_window(n, m)
    design = _vandermonde(n, m)
    solution, _, _, _ = linalg.lstsq(design, np.eye(2 * m + 1))
    weights = np.ascontiguousarray(solution[0], dtype=np.float64)
    weights.flags.writeable = False
    return weights


def _half_window_of(window: FloatArray) -> int:
    size = int(window.shape[0])
    if size % 2 == 0:
        raise ParameterError(f"Window length must be odd, got {size}")
    return (size - 1) // 2


def sg_fit(window: npt.ArrayLike, n: int) -> FloatArray:
    """Least-squares polynomial coefficients ``b_0 .. b_n`` of a centred window.

    Offsets run from ``-m`` to ``m``, so ``b_0`` is the smoothed centre value.
    """
    values = np.asarray(window, dtype=np.float64).ravel()
    m = _half_window_of(values)
    _check_window(n, m)
    coeffs, _, _, _ = linalg.lstsq(_vandermonde(n, m), values)
    return np.asarray(coeffs, dtype=np.float64)


def sg_cost(window: npt.ArrayLike, coeffs: npt.ArrayLike) -> float:
    """Sum of squared differences between the polynomial ``coeffs`` and ``window``."""
    values = np.asarray(window, dtype=np.float64).ravel()
    b = np.asarray(coeffs, dtype=np.float64).ravel()
    m = _half_window_of(values)
    fitted = _vandermonde(b.shape[0] - 1, m) @ b
    return float(((fitted - values) ** 2).sum())


def smooth_ranges(ranges: npt.ArrayLike, n: int, m: int) -> FloatArray:
    """Smoothed ranges; the first and last ``m`` samples are returned unchanged.

    A sequence shorter than the window is returned unchanged.
    """
    values = np.asarray(ranges, dtype=np.float64).ravel()
    weights = sg_coefficients(n, m)
    out = values.copy()
    if values.shape[0] < weights.shape[0]:
        return out
    interior = np.correlate(values, weights, mode="valid")
    out[m : values.shape[0] - m] = interior
    return out


def estimate_noise_variance(ranges: npt.ArrayLike, n: int, m: int) -> float:
    """Median squared residual of a smoothing pass, as a range-noise variance estimate."""
    values = np.asarray(ranges, dtype=np.float64).ravel()
    if values.shape[0] < 2 * m + 1:
        raise ParameterError(f"Sequence of {values.shape[0]} samples is shorter than the window {2 * m + 1}")
    residual = values - smooth_ranges(values, n, m)
    return float(np.median(residual[m : values.shape[0] - m] ** 2))


def _ring_labels(theta: FloatArray, ring_width: Optional[float]) -> IndexArray:
    rounded = np.round(theta, _THETA_DECIMALS)
    width = ring_width
    if width is None:
        distinct = np.unique(rounded)
        width = float(np.median(np.diff(distinct))) if distinct.shape[0] > 1 else math.inf
    if not math.isfinite(width):
        return np.zeros(theta.shape[0], dtype=np.int64)
    return np.rint((rounded - rounded.min()) / width).astype(np.int64)


def _sequence_layout(
    theta: FloatArray,
    phi: FloatArray,
    ring_width: Optional[float],
    max_azimuth_gap: float,
) -> tuple[IndexArray, IndexArray, IndexArray, IndexArray]:
    """Sort order plus start/stop offsets and ring of each sequence."""
    count = theta.shape[0]
    if count == 0:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty, empty, empty
    rings = _ring_labels(theta, ring_width)
    order = np.lexsort((np.arange(count), phi, rings))
    sorted_rings = rings[order]
    breaks = np.flatnonzero((np.diff(sorted_rings) != 0) | (np.diff(phi[order]) > max_azimuth_gap)) + 1
    starts = np.concatenate(([0], breaks)).astype(np.int64)
    stops = np.concatenate((breaks, [count])).astype(np.int64)
    return order.astype(np.int64), starts, stops, sorted_rings[starts]


def build_scan_sequences(
    r: npt.ArrayLike,
    theta: npt.ArrayLike,
    phi: npt.ArrayLike,
    ring_width: Optional[float] = None,
    max_azimuth_gap: float = 0.1,
    *,
    indices: Optional[npt.ArrayLike] = None,
) -> list[ScanSequence]:
    """Group points into inclination rings ordered by azimuth.

    Inclinations are rounded to 1e-6 rad; without ``ring_width`` the bucket
    width is the median gap between distinct inclinations. Within a ring
    points are sorted by azimuth, ties by position, and the ring is split
    where the azimuth jumps by more than ``max_azimuth_gap``. Every point
    belongs to exactly one sequence.
    """
    ranges = np.asarray(r, dtype=np.float64).ravel()
    inclinations = np.asarray(theta, dtype=np.float64).ravel()
    azimuths = np.asarray(phi, dtype=np.float64).ravel()
    originals = np.arange(ranges.shape[0], dtype=np.int64) if indices is None else np.asarray(indices, dtype=np.int64).ravel()
    order, starts, stops, rings = _sequence_layout(inclinations, azimuths, ring_width, max_azimuth_gap)
    sequences: list[ScanSequence] = []
    for ring, start, stop in zip(rings, starts, stops):
        positions = order[start:stop]
        sequences.append(ScanSequence(int(ring), positions, originals[positions], azimuths[positions], ranges[positions]))
    return sequences


def optimal_window_length(n: int, sigma2: float, nu: float) -> float:
    """Unrounded optimal window ``[2(n+2) ((2n+3)!)^2 / ((n+1)!)^2 * sigma2 / nu] ** (1 / (2n+5))``."""
    if nu <= 0:
        return math.inf
    ratio = special.factorial(2 * n + 3, exact=True) ** 2 / special.factorial(n + 1, exact=True) ** 2
    return float((2 * (n + 2) * ratio * sigma2 / nu) ** (1.0 / (2 * n + 5)))


def optimal_window(
    n: int,
    sigma2: float,
    ranges: Union[ScanSequence, npt.ArrayLike],
    L: Optional[int] = None,
    tau: Optional[float] = None,
    *,
    max_half_window: int = 12,
) -> int:
    """Half window minimising the noise/bias trade-off for one sequence.

    The roughness ``nu`` is the mean squared ``(n+2)``-th finite difference
    of the ranges, over at most ``L`` terms. The optimal length is rounded
    to the nearest odd integer, no shorter than ``n + 2`` and no longer than
    ``2 * max_half_window + 1``.

    Raises
    ------
    ParameterError
        If the sequence is too short for the finite differences, or
        ``sigma2`` is negative.
    """
    values = ranges.r if isinstance(ranges, ScanSequence) else np.asarray(ranges, dtype=np.float64).ravel()
    if sigma2 < 0:
        raise ParameterError(f"Noise variance must be non-negative, got {sigma2}")
    if values.shape[0] < n + 3:
        raise ParameterError(f"Need at least {n + 3} samples to estimate the order-{n + 2} difference, got {values.shape[0]}")
    differences = np.diff(values, n + 2)
    if L is not None:
        differences = differences[:L]
    nu = float(np.mean(differences**2))
    if tau is not None:
        logger.debug("Roughness from %d samples over %.3f s (%.1f Hz)", differences.shape[0], tau, differences.shape[0] / tau)
    min_half = (n + 2) // 2
    if nu == 0:
        return max(min_half, max_half_window)
    length = optimal_window_length(n, sigma2, nu)
    half = int(math.floor((length - 1) / 2 + 0.5)) if math.isfinite(length) else max_half_window
    return max(min_half, min(half, max_half_window))


def _half_window_for(values: FloatArray, cfg: SgConfig, tau: float) -> int:
    if not cfg.use_optimal_window:
        return cfg.half_window
    sigma2 = estimate_noise_variance(values, cfg.poly_degree, cfg.half_window)
    best = optimal_window(cfg.poly_degree, sigma2, values, cfg.sample_count, tau, max_half_window=cfg.max_half_window)
    return min(best, (values.shape[0] - 1) // 2)


def sg_smooth_and_reject(cloud: PointCloud, cfg: SgConfig, segment: Branch | str) -> SgResult:
    """Reject points whose range departs from the smoothed range by more than the tolerance.

    Points closer than the segment's ``r_d`` and sequences shorter than the
    window pass through. Kept points keep their original coordinates unless
    ``cfg.replace_outliers`` is set, in which case outliers are kept and moved
    along their ray to the smoothed range.
    """
    branch = Branch(segment)
    count = len(cloud)
    if count == 0:
        return SgResult(cloud, cloud)
    r, theta, phi = cloud.spherical()
    eligible = np.flatnonzero(r >= cfg.r_d_for(branch))
    outliers = np.zeros(count, dtype=bool)
    smoothed = r.copy()
    tau = cfg.sample_period if cfg.sample_period is not None else DEFAULT_FRAME_PERIOD
    filtered = 0
    if eligible.shape[0]:
        order, starts, stops, _ = _sequence_layout(theta[eligible], phi[eligible], cfg.ring_width, cfg.max_azimuth_gap)
        members = eligible[order]
        shortest = max(cfg.window, cfg.poly_degree + 3) if cfg.use_optimal_window else cfg.window
        long_enough = np.flatnonzero(stops - starts >= shortest)
        for seq in long_enough:
            positions = members[starts[seq] : stops[seq]]
            values = r[positions]
            m = _half_window_for(values, cfg, tau)
            fitted = smooth_ranges(values, cfg.poly_degree, m)
            outliers[positions] = np.abs(values - fitted) > cfg.residual_tolerance
            smoothed[positions] = fitted
            filtered += 1
    logger.debug("SG %s: %d of %d points in %d filtered sequences flagged", branch, int(outliers.sum()), count, filtered)
    if cfg.replace_outliers:
        moved = outliers & (r > 0)
        if not moved.any():
            return SgResult(cloud, cloud.subset(np.zeros(count, dtype=bool)), 0, filtered)
        xyz = np.array(cloud.xyz)
        xyz[moved] *= (smoothed[moved] / r[moved])[:, None]
        kept = cloud.with_xyz(xyz)
        return SgResult(kept, cloud.subset(np.zeros(count, dtype=bool)), int(moved.sum()), filtered)
    kept, rejected = cloud.split(outliers)
    return SgResult(kept, rejected, 0, filtered)
