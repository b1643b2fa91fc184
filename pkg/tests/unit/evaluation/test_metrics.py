"""Tests for labels, confusion metrics and point matching."""

import numpy as np
import pytest

from aerofilter.cloud import PointCloud
from aerofilter.evaluation import EvalMetrics, Label, LabeledCloud, match_points, score
from aerofilter.exceptions.data import LabelError
from aerofilter.testing import create_random_cloud


@pytest.fixture
def truth() -> LabeledCloud:
    """100 points of which the first 10 are aerosol."""
    labels = np.zeros(100, dtype=np.int8)
    labels[:10] = Label.AEROSOL
    return LabeledCloud(create_random_cloud(100, seed=3), labels)


class TestLabel:
    """Tests for Label parsing."""

    @pytest.mark.parametrize("text,label", [("aerosol", Label.AEROSOL), ("Environment", Label.ENVIRONMENT), (" AEROSOL\n", Label.AEROSOL)])
    def test_from_text(self, text: str, label: Label) -> None:
        """Labels parse case-insensitively."""
        assert Label.from_text(text) is label
        assert Label.from_text(label.text) is label

    def test_unknown_text(self) -> None:
        """Unknown names are label errors."""
        with pytest.raises(LabelError, match="dust"):
            Label.from_text("dust")


class TestLabeledCloud:
    """Tests for LabeledCloud validation."""

    def test_count_mismatch(self) -> None:
        """One label per point is required."""
        with pytest.raises(LabelError, match="3 labels for 4 points"):
            LabeledCloud(create_random_cloud(4), np.zeros(3, dtype=np.int8))

    def test_unknown_value(self) -> None:
        """Only 0 and 1 are labels."""
        with pytest.raises(LabelError):
            LabeledCloud(create_random_cloud(3), np.array([0, 1, 2]))

    def test_labels_read_only(self, truth: LabeledCloud) -> None:
        """Labels cannot be modified in place."""
        with pytest.raises(ValueError):
            truth.labels[0] = 0

    def test_empty(self) -> None:
        """An empty cloud takes an empty label array."""
        assert len(LabeledCloud(PointCloud.empty(), np.empty(0, dtype=np.int8))) == 0


class TestEvalMetrics:
    """Tests for EvalMetrics.from_counts."""

    def test_known_counts(self) -> None:
        """Nine hits, one false alarm and one miss give F1 0.9."""
        metrics = EvalMetrics.from_counts(9, 1, 1, 89)
        assert metrics.precision == pytest.approx(0.9)
        assert metrics.recall == pytest.approx(0.9)
        assert metrics.f1 == pytest.approx(0.9)
        assert metrics.total == 100
        assert metrics.false_positive_rate == pytest.approx(1 / 90)

    def test_undefined_ratios_are_zero(self) -> None:
        """Empty denominators give 0 rather than an error."""
        metrics = EvalMetrics.from_counts(0, 0, 0, 0)
        assert (metrics.precision, metrics.recall, metrics.f1, metrics.false_positive_rate) == (0.0, 0.0, 0.0, 0.0)

    def test_no_hits(self) -> None:
        """Precision and recall of zero give F1 zero."""
        assert EvalMetrics.from_counts(0, 5, 5, 0).f1 == 0.0

    def test_to_dict(self) -> None:
        """The dictionary carries counts and ratios."""
        assert EvalMetrics.from_counts(1, 0, 0, 1).to_dict() == {"tp": 1, "fp": 0, "fn": 0, "tn": 1, "precision": 1.0, "recall": 1.0, "f1": 1.0}


class TestScore:
    """Tests for score."""

    def test_confusion_counts(self, truth: LabeledCloud) -> None:
        """Rejected points are matched to labels by original index."""
        rejected = truth.cloud.subset(np.array([0, 1, 2, 3, 4, 5, 6, 7, 8, 50]))
        metrics = score(rejected, truth)
        assert (metrics.tp, metrics.fp, metrics.fn, metrics.tn) == (9, 1, 1, 89)
        assert metrics.f1 == pytest.approx(0.9)

    def test_perfect(self, truth: LabeledCloud) -> None:
        """Rejecting exactly the aerosol gives F1 1."""
        assert score(truth.cloud.subset(truth.aerosol_mask), truth).f1 == 1.0

    def test_nothing_rejected(self, truth: LabeledCloud) -> None:
        """An empty rejection misses every aerosol point."""
        metrics = score(truth.cloud.subset(np.zeros(100, dtype=bool)), truth)
        assert (metrics.tp, metrics.fn, metrics.tn) == (0, 10, 90)

    def test_index_outside_truth(self, truth: LabeledCloud) -> None:
        """Indices beyond the labelled cloud are refused."""
        stray = PointCloud(np.zeros((1, 3)), [1.0], indices=[100])
        with pytest.raises(LabelError, match="100"):
            score(stray, truth)


class TestMatchPoints:
    """Tests for match_points."""

    def test_matches_shuffled_subset(self) -> None:
        """Positions are recovered for a reordered subset."""
        reference = create_random_cloud(50, seed=1)
        positions = np.array([7, 3, 42, 0])
        subset = PointCloud(reference.xyz[positions], reference.intensity[positions])
        assert np.array_equal(match_points(reference, subset), positions)

    def test_duplicates_matched_one_to_one(self) -> None:
        """Repeated points consume distinct reference positions in order."""
        xyz = np.array([[1.0, 0, 0], [2.0, 0, 0], [1.0, 0, 0]])
        reference = PointCloud(xyz, [5.0, 5.0, 5.0])
        subset = PointCloud(xyz[[0, 0]], [5.0, 5.0])
        assert match_points(reference, subset).tolist() == [0, 2]

    def test_exhausted_duplicates(self) -> None:
        """A point cannot be matched more often than it occurs."""
        reference = PointCloud([[1.0, 0, 0]], [5.0])
        with pytest.raises(LabelError, match="no match"):
            match_points(reference, PointCloud([[1.0, 0, 0], [1.0, 0, 0]], [5.0, 5.0]))

    def test_intensity_is_part_of_the_key(self) -> None:
        """Equal coordinates with another intensity do not match."""
        with pytest.raises(LabelError):
            match_points(PointCloud([[1.0, 0, 0]], [5.0]), PointCloud([[1.0, 0, 0]], [6.0]))
