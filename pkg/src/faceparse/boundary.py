"""Boundary ground truth and loss weight maps derived from label maps."""

from __future__ import annotations

import numpy as np

from .errors import NegativeAlpha

# default boundary emphasis used by the weighted fusion loss
DEFAULT_ALPHA = 200.0


def extract_boundary(labels) -> np.ndarray:
    """Boolean map of label transitions under 4-connectivity.

    Both sides of a differing edge are flagged (2 px total thickness);
    image borders are not boundaries by themselves.
    """
    lab = np.asarray(labels)
    if lab.ndim != 2:
        raise ValueError("label map must be 2-D")
    out = np.zeros(lab.shape, dtype=bool)
    dv = lab[1:, :] != lab[:-1, :]
    out[1:, :] |= dv
    out[:-1, :] |= dv
    dh = lab[:, 1:] != lab[:, :-1]
    out[:, 1:] |= dh
    out[:, :-1] |= dh
    return out


def make_weight_map(boundary, alpha: float) -> np.ndarray:
    """Per-pixel loss weights: 1 + alpha on boundary pixels, 1 elsewhere."""
    if alpha < 0:
        raise NegativeAlpha(f"alpha must be >= 0, got {alpha}")
    b = np.asarray(boundary, dtype=bool)
    return np.where(b, 1.0 + float(alpha), 1.0)
