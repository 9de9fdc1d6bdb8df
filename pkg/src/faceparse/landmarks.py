"""106-point landmark sets and their text format.

The on-disk format is a count line followed by one ``x y`` line per point:

    106
    31.629999 288.290009
    ...

Coordinates are floats (sub-pixel) and may fall outside the image for
profile faces.  Visibility flags are an in-memory concept only; parsed
files default every point to visible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

from .errors import CountMismatch, MalformedLine

POINT_COUNT = 106
COORD_LIMIT = 1e6


@dataclass(frozen=True)
class LandmarkSet:
    """Ordered 106 (x, y) points with per-point visibility."""

    points: tuple[tuple[float, float], ...]
    visibility: tuple[bool, ...] = field(default=())
    image_width: int | None = None
    image_height: int | None = None

    def __post_init__(self):
        if len(self.points) != POINT_COUNT:
            raise CountMismatch(
                f"expected {POINT_COUNT} points, got {len(self.points)}"
            )
        if not self.visibility:
            object.__setattr__(self, "visibility", (True,) * POINT_COUNT)
        elif len(self.visibility) != POINT_COUNT:
            raise CountMismatch("visibility flags must match the point count")
        for x, y in self.points:
            if not (math.isfinite(x) and math.isfinite(y)):
                raise ValueError("landmark coordinates must be finite")
            if abs(x) >= COORD_LIMIT or abs(y) >= COORD_LIMIT:
                raise ValueError(f"landmark coordinate out of range: ({x}, {y})")

    def with_point(self, index: int, x: float, y: float) -> "LandmarkSet":
        pts = list(self.points)
        pts[index] = (float(x), float(y))
        return LandmarkSet(
            tuple(pts), self.visibility, self.image_width, self.image_height
        )

    def with_visibility(self, flags) -> "LandmarkSet":
        return LandmarkSet(
            self.points, tuple(bool(f) for f in flags),
            self.image_width, self.image_height,
        )


def _coerce_text(data) -> str:
    if isinstance(data, bytes):
        return data.decode("utf-8")
    if isinstance(data, str):
        return data
    return data.read().decode("utf-8") if hasattr(data, "read") else str(data)


def parse_landmark_file(
    data,
    image_width: int | None = None,
    image_height: int | None = None,
) -> LandmarkSet:
    """Parse landmark text (bytes, str or stream) into a LandmarkSet.

    Raises CountMismatch when the count line is not 106 or disagrees with
    the number of coordinate lines, MalformedLine for any non-numeric or
    out-of-range token.
    """
    lines = [ln.strip() for ln in _coerce_text(data).splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise CountMismatch("empty landmark file")
    try:
        count = int(lines[0])
    except ValueError:
        raise MalformedLine(f"count line is not an integer: {lines[0]!r}") from None
    if count != POINT_COUNT:
        raise CountMismatch(f"count line says {count}, expected {POINT_COUNT}")
    coord_lines = lines[1:]
    if len(coord_lines) != count:
        raise CountMismatch(
            f"count line says {count} but file has {len(coord_lines)} coordinate lines"
        )
    points = []
    for ln in coord_lines:
        tokens = ln.split()
        if len(tokens) != 2:
            raise MalformedLine(f"expected 'x y', got {ln!r}")
        try:
            x, y = float(tokens[0]), float(tokens[1])
        except ValueError:
            raise MalformedLine(f"non-numeric token in {ln!r}") from None
        if not (math.isfinite(x) and math.isfinite(y)):
            raise MalformedLine(f"non-finite coordinate in {ln!r}")
        if abs(x) >= COORD_LIMIT or abs(y) >= COORD_LIMIT:
            raise MalformedLine(f"coordinate out of range in {ln!r}")
        points.append((x, y))
    return LandmarkSet(tuple(points), (), image_width, image_height)


def serialize_landmarks(landmarks: LandmarkSet) -> bytes:
    """Canonical byte form: count line + 6-decimal coordinate lines."""
    out = [f"{POINT_COUNT}"]
    out.extend(f"{x:.6f} {y:.6f}" for x, y in landmarks.points)
    return ("\n".join(out) + "\n").encode("utf-8")


def load_landmark_file(path, image_width=None, image_height=None) -> LandmarkSet:
    return parse_landmark_file(
        Path(path).read_bytes(), image_width, image_height
    )


def save_landmark_file(path, landmarks: LandmarkSet) -> None:
    Path(path).write_bytes(serialize_landmarks(landmarks))
