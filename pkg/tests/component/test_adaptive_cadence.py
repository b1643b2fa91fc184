"""Adaptive range and threshold updates across frames."""

import numpy as np

from aerofilter.cloud import PointCloud
from aerofilter.config import PipelineConfig
from aerofilter.filters.range_gate import R_MIN_BOUNDS
from aerofilter.pipeline import run_stream
from aerofilter.testing import create_frame_stream


def _cluster_frames(count: int, *, n_points: int, radius: float, period: float) -> list[PointCloud]:
    rng = np.random.default_rng(21)
    frames = []
    for i in range(count):
        directions = rng.standard_normal((n_points, 3))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        xyz = directions * rng.uniform(0.5, radius, n_points)[:, None]
        frames.append(PointCloud(xyz, rng.uniform(10, 30, n_points), frame_id=f"c{i}", timestamp=i * period))
    return frames


class TestAdaptiveCadence:
    """The samplers fire at most once per sampling period of stream time."""

    def test_ten_hertz_stream(self) -> None:
        """Twenty frames at 0.1 s give two adaptive updates."""
        results = list(run_stream(create_frame_stream(20, period=0.1, n_points=400), PipelineConfig()))
        assert sum(r.report.adaptive_update for r in results) == 2

    def test_slow_stream_updates_every_frame(self) -> None:
        """Frames a full period apart each trigger an update."""
        results = list(run_stream(create_frame_stream(5, period=1.0, n_points=400), PipelineConfig()))
        assert all(r.report.adaptive_update for r in results)

    def test_values_change_only_on_update_frames(self) -> None:
        """Between updates the next frame sees the same r_min and threshold."""
        results = list(run_stream(create_frame_stream(15, period=0.1, n_points=400), PipelineConfig()))
        for previous, current in zip(results, results[1:]):
            if not previous.report.adaptive_update:
                assert current.report.r_min == previous.report.r_min
                assert current.report.i_th == previous.report.i_th


class TestCloseRangeBudget:
    """r_min tracks the close-range point budget within its bounds."""

    def test_dense_close_cluster_shrinks_r_min_to_floor(self) -> None:
        """A dense cluster within 2 m drives r_min down to its lower bound and no further."""
        cfg = PipelineConfig(close_budget=100)
        results = list(run_stream(_cluster_frames(5, n_points=1000, radius=1.9, period=1.0), cfg))
        r_mins = [r.state.gate.r_min for r in results]
        assert r_mins[0] < cfg.r_min
        assert all(b <= a for a, b in zip(r_mins, r_mins[1:]))
        assert r_mins[-1] == R_MIN_BOUNDS[0]

    def test_sparse_close_range_grows_r_min_to_ceiling(self) -> None:
        """An empty close range lets r_min grow to its upper bound."""
        far = [PointCloud([[20.0, 0.0, 0.0], [21.0, 0.0, 0.0]], [10.0, 10.0], frame_id=str(i), timestamp=float(i)) for i in range(4)]
        results = list(run_stream(far, PipelineConfig()))
        assert results[-1].state.gate.r_min == R_MIN_BOUNDS[1]

    def test_r_min_stays_in_bounds(self) -> None:
        """Random streams never move r_min outside its interval."""
        results = list(run_stream(create_frame_stream(30, period=0.5, n_points=2000, seed=4), PipelineConfig(close_budget=50)))
        assert all(R_MIN_BOUNDS[0] <= r.state.gate.r_min <= R_MIN_BOUNDS[1] for r in results)
