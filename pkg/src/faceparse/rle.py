"""Row-wise run-length coding for label maps on the service wire.

Each row becomes a flat list of (value, run) pairs: [v0, n0, v1, n1, ...]
with sum(n) == width.  Values are category ids, so the coding works for
multi-class maps, not just binary masks.
"""

from __future__ import annotations

import numpy as np


def encode_label_rows(labels) -> list[list[int]]:
    lab = np.asarray(labels)
    if lab.ndim != 2:
        raise ValueError("label map must be 2-D")
    rows = []
    for row in lab:
        change = np.flatnonzero(row[1:] != row[:-1]) + 1
        starts = np.concatenate([[0], change])
        ends = np.concatenate([change, [row.size]])
        flat = np.empty(starts.size * 2, dtype=np.int64)
        flat[0::2] = row[starts]
        flat[1::2] = ends - starts
        rows.append(flat.tolist())
    return rows


def decode_label_rows(rows: list[list[int]], width: int,
                      dtype=np.uint8) -> np.ndarray:
    out = np.zeros((len(rows), width), dtype=dtype)
    for y, flat in enumerate(rows):
        if len(flat) % 2:
            raise ValueError(f"row {y}: odd run-length list")
        pos = 0
        for k in range(0, len(flat), 2):
            value, run = flat[k], flat[k + 1]
            if run < 0 or pos + run > width:
                raise ValueError(f"row {y}: runs exceed width {width}")
            out[y, pos:pos + run] = value
            pos += run
        if pos != width:
            raise ValueError(f"row {y}: runs cover {pos} of {width} columns")
    return out
