"""Label-map and mask image files.

Label maps persist as 8-bit palettized PNGs whose pixel values are the
category ids (bit-exact round-trip; the palette is display sugar).
Boundary/part masks persist as 0/255 grayscale PNGs.  All writes are
atomic: temp file in the target directory, then rename.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

import numpy as np
from PIL import Image

from .categories import NUM_CATEGORIES, PALETTE


def _flat_palette() -> list[int]:
    flat = [c for rgb in PALETTE for c in rgb]
    flat.extend([0] * (768 - len(flat)))
    return flat


def atomic_write_bytes(path, data: bytes) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _png_bytes(img: Image.Image) -> bytes:
    import io

    buf = io.BytesIO()
    img.save(buf, format="PNG")
    return buf.getvalue()


def label_map_png_bytes(labels) -> bytes:
    lab = np.asarray(labels)
    if lab.ndim != 2:
        raise ValueError("label map must be 2-D")
    if lab.min() < 0 or lab.max() >= NUM_CATEGORIES:
        raise ValueError("label values must lie in 0..10")
    img = Image.fromarray(lab.astype(np.uint8), mode="P")
    img.putpalette(_flat_palette())
    return _png_bytes(img)


def write_label_map(path, labels) -> None:
    atomic_write_bytes(path, label_map_png_bytes(labels))


def read_label_map(path) -> np.ndarray:
    with Image.open(path) as img:
        if img.mode not in ("P", "L"):
            img = img.convert("L")
        arr = np.asarray(img, dtype=np.uint8)
    if arr.ndim != 2:
        raise ValueError(f"{path}: expected a single-channel label map")
    if arr.max() >= NUM_CATEGORIES:
        raise ValueError(f"{path}: label values exceed 10")
    return arr


def write_mask(path, mask) -> None:
    m = np.asarray(mask).astype(bool)
    img = Image.fromarray((m * np.uint8(255)), mode="L")
    atomic_write_bytes(path, _png_bytes(img))


def read_mask(path) -> np.ndarray:
    with Image.open(path) as img:
        arr = np.asarray(img.convert("L"))
    return arr > 127


def image_size(path) -> tuple[int, int]:
    """(width, height) of an image file without decoding pixel data."""
    with Image.open(path) as img:
        return img.size
