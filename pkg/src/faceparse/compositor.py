"""Rasterization of contours and hierarchical fusion into a label map.

A pixel belongs to a contour iff its center (x + 0.5, y + 0.5) is inside
under the even-odd rule.  Fusion is a painter's algorithm in the fixed
occlusion order background < skin < facial parts < hair; background is the
never-painted remainder, never an overwriting layer.
"""

from __future__ import annotations

import numpy as np

from .categories import HAIR, SKIN
from .errors import DimensionMismatch
from .fitting import Contour


def rasterize(contour: Contour, width: int, height: int) -> np.ndarray:
    """Boolean (height, width) mask of pixel centers inside the contour.

    Even-odd rule with the half-open edge convention: an edge contributes a
    crossing for scanline cy iff exactly one endpoint satisfies y > cy, at
    x = x1 + (cy - y1) * (x2 - x1) / (y2 - y1); a center is inside iff an
    odd number of crossings lies strictly to its right.
    """
    mask = np.zeros((height, width), dtype=bool)
    verts = contour.vertices
    n = verts.shape[0]
    if n < 3:
        return mask

    x1, y1 = verts[:, 0], verts[:, 1]
    x2, y2 = np.roll(x1, -1), np.roll(y1, -1)

    row_lo = max(0, int(np.floor(verts[:, 1].min() - 0.5)))
    row_hi = min(height - 1, int(np.ceil(verts[:, 1].max())))
    if row_lo > row_hi:
        return mask
    centers_x = np.arange(width, dtype=float) + 0.5

    for row in range(row_lo, row_hi + 1):
        cy = row + 0.5
        crossing = (y1 > cy) != (y2 > cy)
        if not crossing.any():
            continue
        xa, xb = x1[crossing], x2[crossing]
        ya, yb = y1[crossing], y2[crossing]
        xs = np.sort(xa + (cy - ya) * (xb - xa) / (yb - ya))
        greater = xs.size - np.searchsorted(xs, centers_x, side="right")
        mask[row] = (greater % 2) == 1
    return mask


def fuse(
    skin: np.ndarray | None,
    part_masks: list[tuple[int, np.ndarray]],
    hair: np.ndarray | None,
    width: int,
    height: int,
) -> np.ndarray:
    """Merge layer masks into a (height, width) uint8 label map.

    Paint order: skin, then each part mask in list order (later entries win
    inside the parts layer), then hair over everything.  Pixels no layer
    claims stay background (0).
    """
    shape = (height, width)
    labels = np.zeros(shape, dtype=np.uint8)

    def check(mask, what):
        mask = np.asarray(mask)
        if mask.shape != shape:
            raise DimensionMismatch(
                f"{what} mask is {mask.shape}, label map is {shape}"
            )
        return mask.astype(bool, copy=False)

    if skin is not None:
        labels[check(skin, "skin")] = SKIN
    for category, mask in part_masks:
        labels[check(mask, f"category {category}")] = np.uint8(category)
    if hair is not None:
        labels[check(hair, "hair")] = HAIR
    return labels
