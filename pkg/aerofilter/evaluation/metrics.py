"""Ground-truth labels and detection metrics (rejected = aerosol-positive)."""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from enum import IntEnum

import numpy as np
import numpy.typing as npt

from aerofilter.cloud import PointCloud
from aerofilter.exceptions.data import LabelError
from aerofilter.types import IndexArray, JsonObject

__all__: list[str] = ["Label", "LabeledCloud", "EvalMetrics", "score", "match_points"]


class Label(IntEnum):
    """Ground-truth class of a point."""

    ENVIRONMENT = 0
    AEROSOL = 1

    @property
    def text(self) -> str:
        return self.name.lower()

    @classmethod
    def from_text(cls, text: str) -> Label:
        """Parse ``environment``/``aerosol`` (any case)."""
        try:
            return cls[text.strip().upper()]
        except KeyError:
            raise LabelError(f"Unknown label {text!r}; expected 'environment' or 'aerosol'") from None


@dataclass(frozen=True)
class LabeledCloud:
    """A cloud with one label per point.

    Raises
    ------
    LabelError
        If the label count differs from the point count or a label is unknown.
    """

    cloud: PointCloud
    labels: npt.NDArray[np.int8]

    def __post_init__(self) -> None:
        labels = np.asarray(self.labels, dtype=np.int8).reshape(-1)
        if labels.shape[0] != len(self.cloud):
            raise LabelError(f"Got {labels.shape[0]} labels for {len(self.cloud)} points")
        if labels.size and not np.isin(labels, [int(Label.ENVIRONMENT), int(Label.AEROSOL)]).all():
            raise LabelError("Labels must be 0 (environment) or 1 (aerosol)")
        labels.flags.writeable = False
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return len(self.cloud)

    @property
    def aerosol_mask(self) -> npt.NDArray[np.bool_]:
        return self.labels == Label.AEROSOL

    @property
    def aerosol_count(self) -> int:
        return int(np.count_nonzero(self.aerosol_mask))


@dataclass(frozen=True)
class EvalMetrics:
    """Confusion counts with precision, recall and F1; undefined ratios are 0."""

    tp: int
    fp: int
    fn: int
    tn: int
    precision: float
    recall: float
    f1: float

    @classmethod
    def from_counts(cls, tp: int, fp: int, fn: int, tn: int) -> EvalMetrics:
        precision = tp / (tp + fp) if tp + fp > 0 else 0.0
        recall = tp / (tp + fn) if tp + fn > 0 else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
        return cls(tp, fp, fn, tn, precision, recall, f1)

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn

    @property
    def false_positive_rate(self) -> float:
        """Share of environment points that were rejected."""
        negatives = self.fp + self.tn
        return self.fp / negatives if negatives else 0.0

    def to_dict(self) -> JsonObject:
        return {
            "tp": self.tp,
            "fp": self.fp,
            "fn": self.fn,
            "tn": self.tn,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
        }


def score(rejected: PointCloud, truth: LabeledCloud) -> EvalMetrics:
    """Score a rejected cloud, identified by original index, against ground truth.

    Raises
    ------
    LabelError
        If a rejected index is outside the labelled cloud.
    """
    n = len(truth)
    indices = rejected.indices
    if indices.size and (indices.min() < 0 or indices.max() >= n):
        bad = int(indices[(indices < 0) | (indices >= n)][0])
        raise LabelError(f"Rejected index {bad} is outside a labelled cloud of {n} points")
    flagged = np.zeros(n, dtype=bool)
    flagged[indices] = True
    aerosol = truth.aerosol_mask
    tp = int(np.count_nonzero(flagged & aerosol))
    fp = int(np.count_nonzero(flagged & ~aerosol))
    fn = int(np.count_nonzero(~flagged & aerosol))
    tn = n - tp - fp - fn
    return EvalMetrics.from_counts(tp, fp, fn, tn)


def _row_keys(cloud: PointCloud) -> list[bytes]:
    table = np.ascontiguousarray(np.column_stack([cloud.xyz, cloud.intensity]), dtype=np.float64)
    return [row.tobytes() for row in table]


def match_points(reference: PointCloud, subset: PointCloud) -> IndexArray:
    """Positions in ``reference`` of the points of ``subset``, matched by exact values.

    Duplicated points are matched one-to-one in order of appearance.

    Raises
    ------
    LabelError
        If a point of ``subset`` has no unused exact match in ``reference``.
    """
    pool: defaultdict[bytes, deque[int]] = defaultdict(deque)
    for position, key in enumerate(_row_keys(reference)):
        pool[key].append(position)
    matched = np.empty(len(subset), dtype=np.int64)
    for row, key in enumerate(_row_keys(subset)):
        candidates = pool.get(key)
        if not candidates:
            raise LabelError(f"Point {row} of the subset ({subset.point(row)}) has no match in the reference cloud")
        matched[row] = candidates.popleft()
    return matched
