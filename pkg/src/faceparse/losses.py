"""Reference implementations of the training losses, as pure reductions.

These exist to verify external training pipelines numerically, so they are
strict about their inputs: probability maps must be normalized and in
range.  Logs are clamped at 1e-12 to avoid -inf on hard zeros.  All sums
go through numpy's pairwise reduction, so results are bit-stable across
runs.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidProbability

LOG_EPS = 1e-12
PROB_SUM_TOL = 1e-6

# default branch weights (semantic, boundary, fusion)
DEFAULT_LAMBDAS = (1.0, 1.0, 2.0)


@dataclass(frozen=True)
class LossWeights:
    semantic: float = DEFAULT_LAMBDAS[0]
    boundary: float = DEFAULT_LAMBDAS[1]
    fusion: float = DEFAULT_LAMBDAS[2]

    def __post_init__(self):
        for v in (self.semantic, self.boundary, self.fusion):
            if not np.isfinite(v) or v < 0:
                raise ValueError(f"loss weights must be finite and >= 0, got {v}")


def _check_class_probs(p, labels) -> tuple[np.ndarray, np.ndarray]:
    p = np.asarray(p, dtype=float)
    lab = np.asarray(labels)
    if p.ndim != 3:
        raise DimensionMismatch("probability map must be (H, W, C)")
    if lab.shape != p.shape[:2]:
        raise DimensionMismatch(
            f"labels {lab.shape} do not match probabilities {p.shape[:2]}"
        )
    if lab.min() < 0 or lab.max() >= p.shape[2]:
        raise DimensionMismatch("label ids exceed the channel count")
    if p.min() < -PROB_SUM_TOL or p.max() > 1 + PROB_SUM_TOL:
        raise InvalidProbability("probabilities must lie in [0, 1]")
    sums = p.sum(axis=2)
    if np.abs(sums - 1.0).max() > PROB_SUM_TOL:
        raise InvalidProbability("per-pixel channel sums must equal 1")
    return p, lab.astype(np.int64, copy=False)


def _true_class_probs(p, labels) -> np.ndarray:
    p, lab = _check_class_probs(p, labels)
    return np.take_along_axis(p, lab[..., None], axis=2)[..., 0]


def semantic_loss(p, labels) -> float:
    """Mean cross-entropy of the true class: -(1/N) sum log p[true]."""
    pt = _true_class_probs(p, labels)
    return float(-np.log(np.maximum(pt, LOG_EPS)).mean())


def boundary_loss(p, boundary, balance: bool = False) -> float:
    """Binary cross-entropy over the boundary map.

    With ``balance`` the positive terms are weighted by the negative-pixel
    ratio and vice versa, so sparse boundaries still register.  If either
    class is empty the balanced form would zero out; it falls back to the
    unbalanced loss with a warning.
    """
    p = np.asarray(p, dtype=float)
    y = np.asarray(boundary, dtype=bool)
    if p.ndim != 2:
        raise DimensionMismatch("boundary probabilities must be (H, W)")
    if p.shape != y.shape:
        raise DimensionMismatch(f"boundary map {y.shape} vs probabilities {p.shape}")
    if p.min() < -PROB_SUM_TOL or p.max() > 1 + PROB_SUM_TOL:
        raise InvalidProbability("probabilities must lie in [0, 1]")

    n = p.size
    n_pos = int(y.sum())
    n_neg = n - n_pos
    w_pos = w_neg = 1.0
    if balance:
        if n_pos == 0 or n_neg == 0:
            warnings.warn(
                "boundary map is single-class; balanced loss falls back to unbalanced",
                stacklevel=2,
            )
        else:
            w_pos = n_neg / n
            w_neg = n_pos / n
    yf = y.astype(float)
    terms = w_pos * yf * np.log(np.maximum(p, LOG_EPS)) + \
        w_neg * (1.0 - yf) * np.log(np.maximum(1.0 - p, LOG_EPS))
    return float(-terms.sum() / n)


def fusion_loss(p, labels, weights) -> float:
    """Weighted cross-entropy: -(1/N) sum w_i log p[true_i]."""
    pt = _true_class_probs(p, labels)
    w = np.asarray(weights, dtype=float)
    if w.shape != pt.shape:
        raise DimensionMismatch(f"weight map {w.shape} vs labels {pt.shape}")
    return float(-(w * np.log(np.maximum(pt, LOG_EPS))).sum() / pt.size)


def total_loss(ls: float, lb: float, lf: float,
               weights: LossWeights = LossWeights()) -> float:
    return weights.semantic * ls + weights.boundary * lb + weights.fusion * lf
