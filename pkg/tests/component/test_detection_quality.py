"""Detection quality of the full pipeline on labelled synthetic scenes."""

import pytest

from aerofilter.cloud import PointCloud
from aerofilter.evaluation import desk_scale_config, score
from aerofilter.pipeline import process_frame, run_stream
from aerofilter.testing import create_labeled_scene


class TestDetectionQuality:
    """F1 and false-positive targets on the desk-scale scene family."""

    @pytest.mark.parametrize("seed", range(20))
    def test_f1_on_smoke_scenes(self, seed: int) -> None:
        """Rejected points match the aerosol labels with F1 of at least 0.9."""
        scene = create_labeled_scene(seed=seed)
        result = process_frame(scene.cloud, desk_scale_config(), now=0.0)
        metrics = score(result.rejected, scene)
        assert metrics.f1 >= 0.9, metrics

    @pytest.mark.parametrize("seed", range(5))
    def test_false_positive_rate_without_aerosol(self, seed: int) -> None:
        """Aerosol-free scenes lose at most 2% of their environment points."""
        scene = create_labeled_scene(seed=seed, blobs=())
        result = process_frame(scene.cloud, desk_scale_config(), now=0.0)
        assert len(result.rejected) <= 0.02 * len(scene)
        assert score(result.rejected, scene).false_positive_rate <= 0.02

    @pytest.mark.parametrize("seed", range(20))
    def test_f1_after_threshold_refit(self, seed: int) -> None:
        """A second frame filtered with the refit intensity threshold still reaches F1 of 0.9."""
        scene = create_labeled_scene(seed=seed)
        cfg = desk_scale_config()
        first = process_frame(scene.cloud, cfg, now=0.0)
        assert first.report.adaptive_update
        second = process_frame(scene.cloud, cfg, state=first.state, now=1.0)
        assert second.report.i_th == first.state.threshold.i_th
        metrics = score(second.rejected, scene)
        assert metrics.f1 >= 0.9, metrics

    def test_f1_holds_across_a_stream(self) -> None:
        """Every frame of a ten-frame 1 Hz stream over one scene keeps F1 of 0.9."""
        scene = create_labeled_scene(seed=3)
        cloud = scene.cloud
        frames = [PointCloud(cloud.xyz, cloud.intensity, cloud.indices, frame_id=str(t), timestamp=float(t)) for t in range(10)]
        for result in run_stream(frames, desk_scale_config()):
            metrics = score(result.rejected, scene)
            assert metrics.f1 >= 0.9, (result.report.frame_id, metrics)
