"""Tests for Savitzky-Golay smoothing and residual rejection."""

import math

import numpy as np
import pytest
from scipy import signal

from aerofilter.cloud import PointCloud
from aerofilter.exceptions.base import ParameterError
from aerofilter.filters import (
    Branch,
    ScanSequence,
    SgConfig,
    build_scan_sequences,
    optimal_window,
    sg_coefficients,
    sg_cost,
    sg_fit,
    sg_smooth_and_reject,
    smooth_ranges,
)
from aerofilter.filters.savgol import estimate_noise_variance, optimal_window_length
from aerofilter.testing import assert_partition, create_ring_scan, windowed_smoothing


class TestSgConfig:
    """Tests for configuration and presets."""

    def test_presets(self) -> None:
        """Close is cubic over 9 samples, long quadratic over 15."""
        close, long = SgConfig.close_preset(), SgConfig.long_preset()
        assert (close.poly_degree, close.window) == (3, 9)
        assert (long.poly_degree, long.window) == (2, 15)

    def test_r_d_for(self) -> None:
        """Each branch has its own minimum range."""
        cfg = SgConfig(r_d=(4, 20))
        assert cfg.r_d_for(Branch.CLOSE) == 4.0
        assert cfg.r_d_for("long") == 20.0

    @pytest.mark.parametrize(
        "kwargs",
        [{"poly_degree": 5, "half_window": 2}, {"residual_tolerance": 0.0}, {"r_d": (10.0, 5.0)}, {"ring_width": 0.0}, {"max_half_window": 0}],
    )
    def test_invalid(self, kwargs: dict[str, object]) -> None:
        """Invalid parameters raise ParameterError."""
        with pytest.raises(ParameterError):
            SgConfig(**kwargs)  # type: ignore[arg-type]


class TestCoefficients:
    """Tests for the smoothing weights."""

    def test_quadratic_five_point(self) -> None:
        """The classic 5-point quadratic weights."""
        np.testing.assert_allclose(sg_coefficients(2, 2), np.array([-3, 12, 17, 12, -3]) / 35, atol=1e-12)

    @pytest.mark.parametrize("n,m", [(2, 2), (3, 4), (2, 7), (4, 6), (0, 3)])
    def test_agree_with_scipy(self, n: int, m: int) -> None:
        """Weights agree with scipy's tabulation."""
        np.testing.assert_allclose(sg_coefficients(n, m), signal.savgol_coeffs(2 * m + 1, n, use="dot"), atol=1e-10)

    @pytest.mark.parametrize("n,m", [(2, 2), (3, 4), (2, 7)])
    def test_sum_to_one(self, n: int, m: int) -> None:
        """Constants are preserved."""
        assert sg_coefficients(n, m).sum() == pytest.approx(1.0)

    def test_read_only(self) -> None:
        """Cached weights cannot be modified."""
        with pytest.raises(ValueError):
            sg_coefficients(2, 2)[0] = 1.0

    def test_window_too_short(self) -> None:
        """2m + 1 <= n is refused."""
        with pytest.raises(ParameterError):
            sg_coefficients(5, 2)


class TestFit:
    """Tests for sg_fit and sg_cost."""

    def test_recovers_polynomial(self) -> None:
        """A window sampled from a degree-n polynomial yields its coefficients."""
        offsets = np.arange(-3, 4, dtype=np.float64)
        window = 2.0 - 0.5 * offsets + 0.25 * offsets**2
        np.testing.assert_allclose(sg_fit(window, 2), [2.0, -0.5, 0.25], atol=1e-10)
        assert sg_cost(window, sg_fit(window, 2)) == pytest.approx(0.0, abs=1e-20)

    def test_cost_is_least_squares(self, rng: np.random.Generator) -> None:
        """The fitted coefficients minimise the cost."""
        window = rng.normal(size=9)
        coeffs = sg_fit(window, 3)
        best = sg_cost(window, coeffs)
        for k in range(4):
            nudged = coeffs.copy()
            nudged[k] += 1e-3
            assert sg_cost(window, nudged) > best

    def test_even_window(self) -> None:
        """Windows must have odd length."""
        with pytest.raises(ParameterError):
            sg_fit(np.ones(6), 2)


class TestSmoothRanges:
    """Tests for smooth_ranges."""

    def test_polynomial_passes_unchanged(self) -> None:
        """Polynomials up to the fit degree are reproduced exactly."""
        x = np.linspace(-2, 2, 50)
        values = 1.0 + x - 2.0 * x**2 + 0.5 * x**3
        np.testing.assert_allclose(smooth_ranges(values, 3, 4), values, atol=1e-10)

    def test_matches_windowed_fits(self, rng: np.random.Generator) -> None:
        """Interior values equal an explicit per-window polynomial fit."""
        values = rng.normal(10.0, 0.5, 80)
        np.testing.assert_allclose(smooth_ranges(values, 2, 7), windowed_smoothing(values, 2, 7), atol=1e-9)

    def test_edges_unchanged(self, rng: np.random.Generator) -> None:
        """The first and last m samples are returned as given."""
        values = rng.normal(size=30)
        out = smooth_ranges(values, 3, 4)
        np.testing.assert_array_equal(out[:4], values[:4])
        np.testing.assert_array_equal(out[-4:], values[-4:])

    def test_short_sequence(self) -> None:
        """Sequences shorter than the window are returned unchanged."""
        values = np.arange(5.0)
        np.testing.assert_array_equal(smooth_ranges(values, 3, 4), values)

    def test_noise_variance_estimate(self, rng: np.random.Generator) -> None:
        """The estimate scales with the injected noise variance."""
        sigma = 0.01
        values = 10.0 + np.sin(np.linspace(0, 3, 5000)) + rng.normal(0.0, sigma, 5000)
        estimate = estimate_noise_variance(values, 3, 4)
        assert 0.2 * sigma**2 < estimate < 0.5 * sigma**2


class TestScanSequences:
    """Tests for ring and azimuth ordering."""

    def test_rings_sorted_by_azimuth(self, rng: np.random.Generator) -> None:
        """Each ring becomes one azimuth-sorted sequence and every point is used once."""
        cloud = create_ring_scan(np.full((3, 50), 8.0))
        shuffled = cloud.subset(rng.permutation(len(cloud)))
        r, theta, phi = shuffled.spherical()
        sequences = build_scan_sequences(r, theta, phi, indices=shuffled.indices)
        assert len(sequences) == 3
        assert [s.ring for s in sequences] == [0, 1, 2]
        assert all(np.all(np.diff(s.phi) > 0) for s in sequences)
        assert sorted(np.concatenate([s.indices for s in sequences]).tolist()) == list(range(150))

    def test_azimuth_gap_splits(self) -> None:
        """A jump larger than the gap limit starts a new sequence."""
        phi = np.concatenate([np.linspace(0, 0.1, 20), np.linspace(1.0, 1.1, 20)])
        sequences = build_scan_sequences(np.full(40, 5.0), np.full(40, np.pi / 2), phi, max_azimuth_gap=0.1)
        assert [len(s) for s in sequences] == [20, 20]

    def test_empty(self) -> None:
        """No points, no sequences."""
        assert build_scan_sequences([], [], []) == []


class TestOptimalWindow:
    """Tests for the noise/roughness window choice."""

    def test_length_formula(self) -> None:
        """The unrounded length follows the closed form."""
        assert optimal_window_length(2, 1.0, 1.0) == pytest.approx((8 * math.factorial(7) ** 2 / math.factorial(3) ** 2) ** (1 / 9))

    def test_smooth_sequence_gets_widest_window(self) -> None:
        """Zero roughness selects the widest window."""
        assert optimal_window(2, 1e-4, np.full(40, 3.0), max_half_window=9) == 9

    def test_more_noise_widens(self) -> None:
        """The window does not shrink as noise grows."""
        values = 10.0 + np.sin(np.linspace(0, 6, 200))
        widths = [optimal_window(2, s2, values) for s2 in (1e-10, 1e-8, 1e-6, 1e-4)]
        assert widths == sorted(widths)
        assert all(2 <= w <= 12 for w in widths)

    def test_accepts_sequence(self) -> None:
        """A ScanSequence is accepted in place of raw ranges."""
        values = 10.0 + np.sin(np.linspace(0, 6, 60))
        seq = ScanSequence(0, np.arange(60), np.arange(60), np.linspace(0, 1, 60), values)
        assert optimal_window(3, 1e-6, seq) == optimal_window(3, 1e-6, values)

    def test_too_short(self) -> None:
        """The finite difference needs n + 3 samples."""
        with pytest.raises(ParameterError):
            optimal_window(2, 1e-4, np.ones(4))

    def test_negative_variance(self) -> None:
        """Noise variance cannot be negative."""
        with pytest.raises(ParameterError):
            optimal_window(2, -1.0, np.ones(20))


class TestSmoothAndReject:
    """Tests for sg_smooth_and_reject on synthetic ring scans."""

    @staticmethod
    def _spiked(base: float = 10.0, spike: float = 9.5) -> PointCloud:
        ranges = np.full((4, 200), base)
        ranges[1, 100] = spike
        return create_ring_scan(ranges)

    def test_spike_rejected(self) -> None:
        """A single range spike is rejected and its neighbours kept."""
        cloud = self._spiked()
        result = sg_smooth_and_reject(cloud, SgConfig.close_preset(), Branch.CLOSE)
        assert result.rejected.indices.tolist() == [300]
        assert result.sequences_filtered == 4
        assert_partition(cloud, result.kept, result.rejected)

    def test_replace_moves_outlier(self) -> None:
        """In replace mode the outlier is kept at the smoothed range."""
        cloud = self._spiked()
        result = sg_smooth_and_reject(cloud, SgConfig.close_preset(replace_outliers=True), Branch.CLOSE)
        assert result.replaced == 1
        assert len(result.rejected) == 0
        assert len(result.kept) == len(cloud)
        moved = result.kept.ranges()[300]
        assert moved == pytest.approx(10.0 - 0.5 * 59 / 231)

    def test_points_inside_r_d_pass(self) -> None:
        """Points closer than the branch's r_d are not examined."""
        cloud = self._spiked(base=3.0, spike=2.5)
        result = sg_smooth_and_reject(cloud, SgConfig.close_preset(), Branch.CLOSE)
        assert len(result.rejected) == 0
        assert result.sequences_filtered == 0

    def test_long_branch_uses_long_r_d(self) -> None:
        """The same scan is skipped on the long branch, whose r_d is 20."""
        result = sg_smooth_and_reject(self._spiked(), SgConfig.long_preset(), Branch.LONG)
        assert len(result.rejected) == 0

    def test_short_sequences_pass(self) -> None:
        """Sequences shorter than the window are left alone."""
        ranges = np.full((2, 5), 10.0)
        ranges[0, 2] = 5.0
        result = sg_smooth_and_reject(create_ring_scan(ranges), SgConfig.close_preset(), Branch.CLOSE)
        assert len(result.rejected) == 0

    def test_optimal_window_mode(self, rng: np.random.Generator) -> None:
        """Optimal-window mode still isolates the spike on a noisy scan."""
        ranges = 10.0 + rng.normal(0.0, 0.005, (4, 200))
        ranges[1, 100] = 8.0
        cloud = create_ring_scan(ranges)
        result = sg_smooth_and_reject(cloud, SgConfig.close_preset(use_optimal_window=True, residual_tolerance=0.5), Branch.CLOSE)
        assert 300 in result.rejected.indices.tolist()

    def test_empty(self) -> None:
        """An empty cloud passes through."""
        result = sg_smooth_and_reject(PointCloud.empty(), SgConfig(), Branch.CLOSE)
        assert len(result.kept) == 0


class TestSmoothingInvariance:
    """Shift properties of the smoother and polynomial reproduction on whole scans."""

    def test_constant_offset_commutes(self, rng: np.random.Generator) -> None:
        """Adding a constant range before smoothing adds it to the result."""
        values = rng.normal(10.0, 0.3, 120)
        np.testing.assert_allclose(smooth_ranges(values + 4.5, 3, 4), smooth_ranges(values, 3, 4) + 4.5, atol=1e-9)

    @pytest.mark.parametrize("shift", [1, 7, 20])
    def test_sample_shift_commutes(self, rng: np.random.Generator, shift: int) -> None:
        """Dropping leading samples shifts the interior smoothed values with them."""
        values = rng.normal(10.0, 0.3, 150)
        m = 7
        full = smooth_ranges(values, 2, m)
        shifted = smooth_ranges(values[shift:], 2, m)
        np.testing.assert_allclose(shifted[m:-m], full[shift + m : -m], atol=1e-9)

    @pytest.mark.parametrize(
        "cfg,segment,base",
        [(SgConfig.close_preset(residual_tolerance=1e-6), Branch.CLOSE, 10.0), (SgConfig.long_preset(residual_tolerance=1e-6), Branch.LONG, 25.0)],
        ids=["close-cubic", "long-quadratic"],
    )
    def test_polynomial_scan_is_untouched(self, cfg: SgConfig, segment: Branch, base: float) -> None:
        """Rings whose range follows a polynomial of the fit degree lose no point, even at a micrometre tolerance."""
        t = np.linspace(-1.0, 1.0, 200)
        ranges = np.stack([base + c * t + 0.3 * t**2 - (0.1 * t**3 if cfg.poly_degree == 3 else 0.0) for c in (0.5, -0.2, 0.0, 1.0)])
        cloud = create_ring_scan(ranges)
        result = sg_smooth_and_reject(cloud, cfg, segment)
        assert result.sequences_filtered == 4
        assert len(result.rejected) == 0
        assert result.kept.equals(cloud)
