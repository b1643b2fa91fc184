"""Stream-level properties of the pipeline: partition, order and determinism."""

from aerofilter.config import PipelineConfig
from aerofilter.evaluation import desk_scale_config
from aerofilter.pipeline import run_stream
from aerofilter.testing import (
    assert_clouds_identical,
    assert_partition,
    assert_sorted_indices,
    create_frame_stream,
    create_labeled_scene,
)


class TestPipelineProperties:
    """Properties that hold for every frame of a stream."""

    def test_every_frame_is_partitioned(self) -> None:
        """Over 100 frames each output pair partitions its input in frame order."""
        frames = list(create_frame_stream(100, n_points=300))
        for frame, result in zip(frames, run_stream(frames, PipelineConfig())):
            assert_partition(frame, result.filtered, result.rejected)
            assert_sorted_indices(result.filtered)
            assert_sorted_indices(result.rejected)
            assert result.report.input_count == len(frame)

    def test_streams_are_deterministic(self) -> None:
        """Replaying a stream reproduces every output and the final state."""
        first = list(run_stream(create_frame_stream(100, n_points=300, seed=9), PipelineConfig()))
        second = list(run_stream(create_frame_stream(100, n_points=300, seed=9), PipelineConfig()))
        for a, b in zip(first, second):
            assert_clouds_identical(a.filtered, b.filtered)
            assert_clouds_identical(a.rejected, b.rejected)
        assert first[-1].state == second[-1].state

    def test_scene_stream_keeps_partition(self) -> None:
        """Repeated scene frames stay partitioned while the state adapts."""
        scene = create_labeled_scene(seed=12)
        frames = [scene.cloud.with_metadata(frame_id=f"s{i}", timestamp=0.5 * i) for i in range(6)]
        results = list(run_stream(frames, desk_scale_config()))
        for result in results:
            assert_partition(scene.cloud, result.filtered, result.rejected)
        assert results[-1].state.adaptive_updates == 3
