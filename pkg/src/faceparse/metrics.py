"""Per-category F1 scoring of predicted label maps.

Counts accumulate across images (pixel-level TP/FP/FN per category), then
F1 = 2PR/(P+R) with the 0/0 -> 0 convention.  Reports carry the fine
11-category scores, the mean over the 10 foreground categories, and the
merged brows/eyes/mouth scores with a micro-averaged overall.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .categories import (
    FOREGROUND_CATEGORIES,
    MERGE_TABLE,
    MERGED_NAMES,
    NUM_CATEGORIES,
    OVERALL_MERGED_IDS,
    CATEGORY_NAMES,
)
from .errors import DimensionMismatch, WrongArity

_MERGE_LUT = np.asarray(MERGE_TABLE, dtype=np.uint8)
NUM_MERGED = len(MERGED_NAMES)


@dataclass
class ConfusionCounts:
    """Summed pixel counts per category; addition merges image batches."""

    tp: np.ndarray
    fp: np.ndarray
    fn: np.ndarray

    @classmethod
    def zero(cls, num_classes: int = NUM_CATEGORIES) -> "ConfusionCounts":
        return cls(
            np.zeros(num_classes, dtype=np.int64),
            np.zeros(num_classes, dtype=np.int64),
            np.zeros(num_classes, dtype=np.int64),
        )

    @property
    def num_classes(self) -> int:
        return self.tp.shape[0]

    def __add__(self, other: "ConfusionCounts") -> "ConfusionCounts":
        return ConfusionCounts(self.tp + other.tp, self.fp + other.fp, self.fn + other.fn)


def accumulate(pred, gt, acc: ConfusionCounts | None = None,
               num_classes: int = NUM_CATEGORIES) -> ConfusionCounts:
    """Add one image pair's confusion counts; returns a new ConfusionCounts."""
    p = np.asarray(pred).ravel()
    g = np.asarray(gt).ravel()
    if np.asarray(pred).shape != np.asarray(gt).shape:
        raise DimensionMismatch(
            f"prediction {np.asarray(pred).shape} vs ground truth {np.asarray(gt).shape}"
        )
    if acc is None:
        acc = ConfusionCounts.zero(num_classes)
    hist = np.bincount(
        num_classes * g.astype(np.int64) + p.astype(np.int64),
        minlength=num_classes * num_classes,
    ).reshape(num_classes, num_classes)
    tp = np.diag(hist)
    fn = hist.sum(axis=1) - tp
    fp = hist.sum(axis=0) - tp
    return acc + ConfusionCounts(tp, fp, fn)


def precision_recall(counts: ConfusionCounts, category: int) -> tuple[float, float]:
    tp = int(counts.tp[category])
    fp = int(counts.fp[category])
    fn = int(counts.fn[category])
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    return precision, recall


def f1(counts: ConfusionCounts, category: int) -> float:
    """Harmonic mean of precision and recall; 0 when both vanish."""
    precision, recall = precision_recall(counts, category)
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def mean_f1(foreground_scores) -> float:
    """Arithmetic mean over the 10 foreground categories (ids 1..10)."""
    values = list(foreground_scores)
    if len(values) != len(FOREGROUND_CATEGORIES):
        raise WrongArity(
            f"expected {len(FOREGROUND_CATEGORIES)} foreground scores, got {len(values)}"
        )
    return float(sum(values)) / len(values)


def merge_labels(labels) -> np.ndarray:
    """Rewrite a label map into the coarse brows/eyes/nose/mouth space."""
    return _MERGE_LUT[np.asarray(labels)]


def _micro_f1(counts: ConfusionCounts, ids) -> float:
    tp = int(counts.tp[list(ids)].sum())
    fp = int(counts.fp[list(ids)].sum())
    fn = int(counts.fn[list(ids)].sum())
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


@dataclass
class CategoryScores:
    """Full score report for one evaluation run (fractions in [0, 1])."""

    precision: np.ndarray
    recall: np.ndarray
    f1: np.ndarray
    mean_f1: float
    merged_f1: dict[str, float]
    overall_micro: float
    overall_macro: float
    fine_counts: ConfusionCounts = field(repr=False, default=None)
    merged_counts: ConfusionCounts = field(repr=False, default=None)

    def to_dict(self) -> dict:
        per_category = {
            name: {
                "precision": float(self.precision[i]),
                "recall": float(self.recall[i]),
                "f1": float(self.f1[i]),
            }
            for i, name in enumerate(CATEGORY_NAMES)
        }
        return {
            "per_category": per_category,
            "mean_f1": self.mean_f1,
            "merged_f1": dict(self.merged_f1),
            "overall_micro": self.overall_micro,
            "overall_macro": self.overall_macro,
        }


def score_counts(fine: ConfusionCounts, merged: ConfusionCounts) -> CategoryScores:
    pr = np.zeros(NUM_CATEGORIES)
    rc = np.zeros(NUM_CATEGORIES)
    f1s = np.zeros(NUM_CATEGORIES)
    for c in range(NUM_CATEGORIES):
        pr[c], rc[c] = precision_recall(fine, c)
        f1s[c] = f1(fine, c)
    merged_f1 = {
        MERGED_NAMES[m]: f1(merged, m) for m in OVERALL_MERGED_IDS
    }
    macro = float(np.mean([merged_f1[MERGED_NAMES[m]] for m in OVERALL_MERGED_IDS]))
    return CategoryScores(
        precision=pr,
        recall=rc,
        f1=f1s,
        mean_f1=mean_f1(f1s[list(FOREGROUND_CATEGORIES)]),
        merged_f1=merged_f1,
        overall_micro=_micro_f1(merged, OVERALL_MERGED_IDS),
        overall_macro=macro,
        fine_counts=fine,
        merged_counts=merged,
    )


def merged_scores(pairs) -> CategoryScores:
    """Score a stream of (pred, gt) label-map pairs.

    Fine counts are accumulated directly; merged counts come from both
    maps rewritten through the merge table, so left/right confusions and
    lip-vs-lip confusions disappear in the merged scores.
    """
    fine = ConfusionCounts.zero(NUM_CATEGORIES)
    merged = ConfusionCounts.zero(NUM_MERGED)
    for pred, gt in pairs:
        fine = accumulate(pred, gt, fine)
        merged = accumulate(merge_labels(pred), merge_labels(gt), merged, NUM_MERGED)
    return score_counts(fine, merged)
