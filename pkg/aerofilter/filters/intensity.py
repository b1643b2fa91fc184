"""Weibull modelling of aerosol intensities and the adaptive intensity threshold."""

from __future__ import annotations

import logging as logging_mod
import math
from dataclasses import dataclass
from enum import StrEnum
from typing import Optional, Union, overload

import numpy as np
import numpy.typing as npt
from scipy import optimize, special

from aerofilter.cloud import PointCloud
from aerofilter.exceptions.base import ParameterError
from aerofilter.exceptions.filters import WeibullFitError
from aerofilter.types import FloatArray

from .result import StageResult

__all__: list[str] = [
    "WeibullParams",
    "IntensityThreshold",
    "IntensitySettings",
    "IntensityHistogram",
    "LocationMode",
    "ReferenceFit",
    "INITIAL_I_TH",
    "DEFAULT_P",
    "P_BOUNDS",
    "DEFAULT_HISTOGRAM_BINS",
    "weibull_pdf",
    "weibull_cdf",
    "weibull_quantile",
    "weibull_mean",
    "weibull_log_likelihood",
    "clip_to_lowest",
    "fit_weibull",
    "intensity_threshold",
    "initial_threshold",
    "adapt_threshold",
    "filter_by_intensity",
    "intensity_histogram",
]

logger: logging_mod.Logger = logging_mod.getLogger(__name__)

INITIAL_I_TH = 2.0
DEFAULT_P = 0.15
P_BOUNDS = (0.1, 0.15)
DEFAULT_HISTOGRAM_BINS = 51
DEFAULT_CLIP_FRACTION = 0.25
MIN_FIT_SAMPLES = 50
_EULER_SHAPE_GUESS = math.pi / math.sqrt(6.0)


class LocationMode(StrEnum):
    """How the Weibull location is fixed before fitting scale and shape."""

    ZERO = "zero"
    MIN = "min"


@dataclass(frozen=True)
class WeibullParams:
    """Weibull scale ``alpha``, shape ``gamma`` and location ``mu``.

    Raises
    ------
    ParameterError
        If ``alpha`` or ``gamma`` is not positive or ``mu`` is negative.
    """

    alpha: float
    gamma: float
    mu: float = 0.0

    def __post_init__(self) -> None:
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise ParameterError(f"Weibull scale must be positive, got {self.alpha}")
        if not (self.gamma > 0 and math.isfinite(self.gamma)):
            raise ParameterError(f"Weibull shape must be positive, got {self.gamma}")
        if not (self.mu >= 0 and math.isfinite(self.mu)):
            raise ParameterError(f"Weibull location must be non-negative, got {self.mu}")

    def as_tuple(self) -> tuple[float, float, float]:
        """``(alpha, gamma, mu)``."""
        return (self.alpha, self.gamma, self.mu)


@dataclass(frozen=True)
class IntensityThreshold:
    """The threshold in force and where it came from.

    ``fit`` is ``None`` while the initial value is in use.
    """

    i_th: float
    p: float = DEFAULT_P
    fit: Optional[WeibullParams] = None
    histogram_bins: int = DEFAULT_HISTOGRAM_BINS

    def __post_init__(self) -> None:
        if not P_BOUNDS[0] <= self.p <= P_BOUNDS[1]:
            raise ParameterError(f"p = {self.p} is outside [{P_BOUNDS[0]}, {P_BOUNDS[1]}]")
        if self.i_th < 0:
            raise ParameterError(f"Intensity threshold must be non-negative, got {self.i_th}")
        if self.fit is not None and self.i_th < self.fit.mu:
            raise ParameterError(f"Intensity threshold {self.i_th} lies below the fit location {self.fit.mu}")
        if self.histogram_bins < 1:
            raise ParameterError(f"histogram_bins must be positive, got {self.histogram_bins}")


@dataclass(frozen=True)
class IntensitySettings:
    """How the adaptive threshold is refitted."""

    p: float = DEFAULT_P
    clip_fraction: Optional[float] = DEFAULT_CLIP_FRACTION
    bins: int = DEFAULT_HISTOGRAM_BINS
    location: LocationMode = LocationMode.ZERO
    min_samples: int = MIN_FIT_SAMPLES

    def __post_init__(self) -> None:
        if self.clip_fraction is not None and not 0 < self.clip_fraction <= 1:
            raise ParameterError(f"clip_fraction must be in (0, 1], got {self.clip_fraction}")
        if self.bins < 1:
            raise ParameterError(f"bins must be positive, got {self.bins}")
        if self.min_samples < 2:
            raise ParameterError(f"min_samples must be at least 2, got {self.min_samples}")
        object.__setattr__(self, "location", LocationMode(self.location))


@dataclass(frozen=True)
class IntensityHistogram:
    """Histogram of intensities with the fitted density at bin centres."""

    edges: FloatArray
    counts: npt.NDArray[np.int64]
    density: FloatArray
    fit: Optional[WeibullParams] = None
    fitted_pdf: Optional[FloatArray] = None

    @property
    def centers(self) -> FloatArray:
        """Bin centres."""
        return 0.5 * (self.edges[:-1] + self.edges[1:])


@dataclass(frozen=True)
class ReferenceFit:
    """A recorded fit: parameters, reported threshold and histogram class count."""

    name: str
    params: WeibullParams
    i_th: float
    classes: int


Scalar = Union[float, int]


@overload
def weibull_pdf(x: Scalar, params: WeibullParams) -> float: ...


@overload
def weibull_pdf(x: npt.NDArray[np.floating], params: WeibullParams) -> FloatArray: ...


def weibull_pdf(x: Scalar | npt.NDArray[np.floating], params: WeibullParams) -> float | FloatArray:
    """Weibull density, zero below the location.

    ``f(x) = (gamma/alpha) * ((x-mu)/alpha)**(gamma-1) * exp(-((x-mu)/alpha)**gamma)``
    for ``x >= mu``.
    """
    values = np.asarray(x, dtype=np.float64)
    shifted = (values - params.mu) / params.alpha
    inside = shifted >= 0
    safe = np.where(inside, shifted, 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        density = (params.gamma / params.alpha) * np.power(safe, params.gamma - 1.0) * np.exp(-np.power(safe, params.gamma))
    density = np.where(inside, density, 0.0)
    return float(density) if density.ndim == 0 else density


@overload
def weibull_cdf(x: Scalar, params: WeibullParams) -> float: ...


@overload
def weibull_cdf(x: npt.NDArray[np.floating], params: WeibullParams) -> FloatArray: ...


def weibull_cdf(x: Scalar | npt.NDArray[np.floating], params: WeibullParams) -> float | FloatArray:
    """Weibull distribution function, zero below the location."""
    values = np.asarray(x, dtype=np.float64)
    shifted = np.maximum((values - params.mu) / params.alpha, 0.0)
    cdf = -np.expm1(-np.power(shifted, params.gamma))
    return float(cdf) if cdf.ndim == 0 else cdf


def weibull_quantile(p: float, params: WeibullParams) -> float:
    """Quantile ``mu + alpha * (-ln(1-p)) ** (1/gamma)``.

    Raises
    ------
    ParameterError
        If ``p`` is outside ``[0, 1)``.
    """
    if not 0 <= p < 1:
        raise ParameterError(f"Quantile probability must be in [0, 1), got {p}")
    return params.mu + params.alpha * (-math.log1p(-p)) ** (1.0 / params.gamma)


def weibull_mean(params: WeibullParams) -> float:
    """Expected value ``mu + alpha * Gamma(1 + 1/gamma)``."""
    return params.mu + params.alpha * float(special.gamma(1.0 + 1.0 / params.gamma))


def weibull_log_likelihood(samples: npt.ArrayLike, params: WeibullParams) -> float:
    """Log-likelihood of ``samples``; ``-inf`` if any sample lies outside the support."""
    x = np.asarray(samples, dtype=np.float64).ravel()
    shifted = (x - params.mu) / params.alpha
    if np.any(shifted <= 0):
        return -math.inf
    return float(
        x.size * (math.log(params.gamma) - math.log(params.alpha))
        + (params.gamma - 1.0) * np.log(shifted).sum()
        - np.power(shifted, params.gamma).sum()
    )


def clip_to_lowest(values: npt.ArrayLike, fraction: float, bins: int = DEFAULT_HISTOGRAM_BINS) -> FloatArray:
    """Keep the samples falling in the histogram bins covering the lowest ``fraction`` of ``[0, max]``."""
    x = np.asarray(values, dtype=np.float64).ravel()
    if x.size == 0:
        return x
    top = float(x.max())
    if top <= 0:
        return x
    edges = np.linspace(0.0, top, bins + 1)
    cutoff = edges[max(1, math.ceil(fraction * bins))]
    return x[x <= cutoff]


def _solve_shape(scaled: FloatArray, log_scaled: FloatArray) -> float:
    """Root of the profile-likelihood shape equation for samples scaled into ``(0, 1]``."""
    mean_log = float(log_scaled.mean())

    def equation(g: float) -> float:
        w = np.power(scaled, g)
        return float((w * log_scaled).sum() / w.sum() - 1.0 / g - mean_log)

    def derivative(g: float) -> float:
        w = np.power(scaled, g)
        s0 = w.sum()
        s1 = (w * log_scaled).sum()
        s2 = (w * log_scaled * log_scaled).sum()
        return float((s2 * s0 - s1 * s1) / (s0 * s0) + 1.0 / (g * g))

    guess = _EULER_SHAPE_GUESS / float(log_scaled.std())
    try:
        shape = float(optimize.newton(equation, guess, fprime=derivative, tol=1e-12, maxiter=100))
        if math.isfinite(shape) and shape > 0 and abs(equation(shape)) < 1e-8:
            return shape
    except (RuntimeError, OverflowError, ZeroDivisionError):
        pass
    logger.debug("Newton iteration on the shape equation failed; bracketing instead")
    low, high = guess, guess
    while equation(low) > 0:
        low /= 2.0
    while equation(high) < 0:
        high *= 2.0
    return float(optimize.brentq(equation, low, high, xtol=1e-14))


def fit_weibull(
    intensities: npt.ArrayLike,
    bins: Optional[int] = None,
    *,
    clip_fraction: Optional[float] = None,
    location: LocationMode | str = LocationMode.ZERO,
    min_samples: int = MIN_FIT_SAMPLES,
) -> WeibullParams:
    """Maximum-likelihood Weibull fit with a fixed location.

    Parameters
    ----------
    intensities : array_like
        Intensity samples.
    bins : int, optional
        Histogram classes used when clipping; defaults to 51.
    clip_fraction : float, optional
        When set, only samples in the histogram bins covering the lowest
        ``clip_fraction`` of ``[0, max]`` take part in the fit.
    location : {"zero", "min"}
        ``"zero"`` fixes ``mu = 0`` and drops samples ``<= 0``; ``"min"`` fixes
        ``mu`` to the sample minimum.
    min_samples : int
        Smallest sample that will be fitted.

    Returns
    -------
    WeibullParams

    Raises
    ------
    WeibullFitError
        If fewer than ``min_samples`` usable samples remain or they are constant.
    """
    x = np.asarray(intensities, dtype=np.float64).ravel()
    x = x[np.isfinite(x)]
    if clip_fraction is not None:
        x = clip_to_lowest(x, clip_fraction, bins or DEFAULT_HISTOGRAM_BINS)
    mode = LocationMode(location)
    mu = 0.0
    if mode is LocationMode.MIN and x.size:
        mu = max(0.0, float(x.min()))
        x = x - mu
    x = x[x > 0]
    if x.size < min_samples:
        raise WeibullFitError(f"Weibull fit needs at least {min_samples} positive samples, got {x.size}")
    top = float(x.max())
    scaled = x / top
    log_scaled = np.log(scaled)
    if float(np.ptp(log_scaled)) == 0.0:
        raise WeibullFitError("Weibull fit is degenerate: all samples are equal")
    gamma = _solve_shape(scaled, log_scaled)
    alpha = top * float(np.power(scaled, gamma).mean()) ** (1.0 / gamma)
    params = WeibullParams(alpha=alpha, gamma=gamma, mu=mu)
    logger.debug("Fitted Weibull alpha=%.6f gamma=%.6f mu=%.6f on %d samples", alpha, gamma, mu, x.size)
    return params


def intensity_threshold(fit: WeibullParams, p: float = DEFAULT_P, bins: int = DEFAULT_HISTOGRAM_BINS) -> IntensityThreshold:
    """Threshold at the ``p`` quantile of ``fit``.

    Raises
    ------
    ParameterError
        If ``p`` is outside ``[0.1, 0.15]``.
    """
    if not P_BOUNDS[0] <= p <= P_BOUNDS[1]:
        raise ParameterError(f"p = {p} is outside [{P_BOUNDS[0]}, {P_BOUNDS[1]}]")
    return IntensityThreshold(i_th=weibull_quantile(p, fit), p=p, fit=fit, histogram_bins=bins)


def initial_threshold(p: float = DEFAULT_P, bins: int = DEFAULT_HISTOGRAM_BINS, i_th: float = INITIAL_I_TH) -> IntensityThreshold:
    """The threshold in force before any fit is available."""
    return IntensityThreshold(i_th=i_th, p=p, fit=None, histogram_bins=bins)


def adapt_threshold(intensities: npt.ArrayLike, previous: IntensityThreshold, settings: IntensitySettings) -> IntensityThreshold:
    """Refit the threshold from a frame's intensities, keeping ``previous`` when the fit fails."""
    try:
        fit = fit_weibull(
            intensities,
            settings.bins,
            clip_fraction=settings.clip_fraction,
            location=settings.location,
            min_samples=settings.min_samples,
        )
    except WeibullFitError as e:
        logger.warning("Keeping intensity threshold %.4f: %s", previous.i_th, e)
        return previous
    return intensity_threshold(fit, settings.p, settings.bins)


def filter_by_intensity(cloud: PointCloud, th: IntensityThreshold) -> StageResult:
    """Reject points with intensity strictly below ``th.i_th``."""
    kept, rejected = cloud.split(cloud.intensity < th.i_th)
    return StageResult(kept, rejected)


def intensity_histogram(
    intensities: npt.ArrayLike,
    bins: int = DEFAULT_HISTOGRAM_BINS,
    fit: Optional[WeibullParams] = None,
    value_range: Optional[tuple[float, float]] = None,
) -> IntensityHistogram:
    """Histogram of intensities, with the fitted density sampled at bin centres when ``fit`` is given."""
    if bins < 1:
        raise ParameterError(f"bins must be positive, got {bins}")
    x = np.asarray(intensities, dtype=np.float64).ravel()
    counts, edges = np.histogram(x, bins=bins, range=value_range)
    widths = np.diff(edges)
    total = max(int(counts.sum()), 1)
    density = counts / (total * np.where(widths > 0, widths, 1.0))
    fitted = None
    if fit is not None:
        fitted = weibull_pdf(0.5 * (edges[:-1] + edges[1:]), fit)
    return IntensityHistogram(edges=edges, counts=counts.astype(np.int64), density=density, fit=fit, fitted_pdf=fitted)
