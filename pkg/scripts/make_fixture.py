#!/usr/bin/env python3
"""Generate the bundled 6-sample dataset fixture.

Writes synthetic images, landmark files, split lists and external
skin/hair masks under tests/fixtures/.  Deterministic: re-running
reproduces identical landmark coordinates (images/masks are PIL-drawn
and stable too, but only landmark bytes are relied on by tests).

The 106-point template below is the reference layout for the shipped
default schema (docs/SCHEMA.md):
    0-32    jawline, left temple -> chin -> right temple
    33-41   left eyebrow ring (inner end, upper edge out, lower edge back)
    42-50   right eyebrow ring
    51-64   nose outline (51 nasion, 52-57 left side/wing/base,
            58 columella base, 59-64 right base/wing/side), 65 nose tip
    66-73   left eye ring (66 outer corner, 67-69 upper lid, 70 inner
            corner, 71-73 lower lid)
    74-81   right eye ring (74 inner corner, 75-77 upper lid, 78 outer
            corner, 79-81 lower lid)
    82-83   pupils
    84-95   outer mouth ring (84 left corner, 85-89 upper, 90 right
            corner, 91-95 lower)
    96-103  inner mouth ring (96 left corner, 97-99 upper, 100 right
            corner, 101-103 lower)
    104-105 auxiliary (glabella, philtrum)
"""

from __future__ import annotations

import math
import sys
from pathlib import Path

import numpy as np
from PIL import Image, ImageDraw

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from faceparse.landmarks import LandmarkSet, save_landmark_file  # noqa: E402

IMAGE_SIZE = 160


def face_template() -> np.ndarray:
    """Canonical face in a unit frame: x in [-1, 1], y down."""
    pts = np.zeros((106, 2))
    # jawline
    a = np.linspace(np.pi, 2 * np.pi, 33)
    pts[0:33, 0] = np.cos(a)
    pts[0:33, 1] = -np.sin(a) * 1.15 + 0.10

    # left eyebrow ring
    pts[33:42] = [
        (-0.20, -0.50), (-0.33, -0.56), (-0.45, -0.585), (-0.57, -0.56),
        (-0.68, -0.50), (-0.57, -0.475), (-0.45, -0.46), (-0.33, -0.468),
        (-0.24, -0.472),
    ]
    # right eyebrow ring (mirror)
    pts[42:51] = pts[33:42] * [-1.0, 1.0]

    # nose outline + tip
    pts[51:66] = [
        (0.00, -0.35),                                   # nasion
        (-0.040, -0.20), (-0.070, -0.08), (-0.100, 0.05),  # left side
        (-0.180, 0.14), (-0.160, 0.22),                   # left wing
        (-0.080, 0.27),                                   # left base
        (0.00, 0.29),                                     # columella base
        (0.080, 0.27),                                    # right base
        (0.160, 0.22), (0.180, 0.14),                     # right wing
        (0.100, 0.05), (0.070, -0.08), (0.040, -0.20),    # right side
        (0.00, 0.15),                                     # tip
    ]

    # left eye ring
    pts[66:74] = [
        (-0.58, -0.18), (-0.50, -0.245), (-0.42, -0.27), (-0.34, -0.245),
        (-0.26, -0.18), (-0.34, -0.13), (-0.42, -0.115), (-0.50, -0.13),
    ]
    # right eye ring (mirror of left, ring order preserved: inner corner first)
    pts[74:82] = [
        (0.26, -0.18), (0.34, -0.245), (0.42, -0.27), (0.50, -0.245),
        (0.58, -0.18), (0.50, -0.13), (0.42, -0.115), (0.34, -0.13),
    ]
    pts[82] = (-0.42, -0.18)
    pts[83] = (0.42, -0.18)

    # outer mouth ring
    pts[84:96] = [
        (-0.30, 0.60), (-0.18, 0.545), (-0.08, 0.52), (0.00, 0.535),
        (0.08, 0.52), (0.18, 0.545), (0.30, 0.60), (0.18, 0.68),
        (0.08, 0.715), (0.00, 0.72), (-0.08, 0.715), (-0.18, 0.68),
    ]
    # inner mouth ring
    pts[96:104] = [
        (-0.24, 0.60), (-0.12, 0.575), (0.00, 0.565), (0.12, 0.575),
        (0.24, 0.60), (0.12, 0.645), (0.00, 0.655), (-0.12, 0.645),
    ]
    pts[104] = (0.00, -0.46)
    pts[105] = (0.00, 0.42)
    return pts


def place(template: np.ndarray, scale: float, rotation: float,
          center: tuple[float, float]) -> np.ndarray:
    c, s = math.cos(rotation), math.sin(rotation)
    rot = np.array([[c, -s], [s, c]])
    return template @ rot.T * scale + np.asarray(center)


def ellipse_polygon(cx, cy, rx, ry, scale, rotation, center, n=72) -> np.ndarray:
    t = np.linspace(0, 2 * np.pi, n, endpoint=False)
    ring = np.stack([cx + rx * np.cos(t), cy + ry * np.sin(t)], axis=1)
    return place(ring, scale, rotation, center)


def draw_polygon(draw: ImageDraw.ImageDraw, pts: np.ndarray, fill) -> None:
    draw.polygon([tuple(p) for p in pts], fill=fill)


def render_sample(pts: np.ndarray, scale, rotation, center, fringe: bool):
    img = Image.new("RGB", (IMAGE_SIZE, IMAGE_SIZE), (68, 78, 92))
    draw = ImageDraw.Draw(img)

    hair_outer = ellipse_polygon(0.0, -0.12, 1.14, 1.08, scale, rotation, center)
    skin_ring = ellipse_polygon(0.0, 0.12, 1.00, 1.16, scale, rotation, center)
    draw_polygon(draw, hair_outer, (74, 48, 30))
    draw_polygon(draw, skin_ring, (224, 182, 147))
    for sl in (slice(33, 42), slice(42, 51)):
        draw_polygon(draw, pts[sl], (92, 60, 38))
    for sl in (slice(66, 74), slice(74, 82)):
        draw_polygon(draw, pts[sl], (246, 246, 246))
    draw_polygon(draw, pts[84:96], (186, 98, 94))
    draw_polygon(draw, pts[96:104], (120, 52, 52))
    for pupil in (pts[82], pts[83]):
        r = 0.035 * scale
        draw.ellipse([pupil[0] - r, pupil[1] - r, pupil[0] + r, pupil[1] + r],
                     fill=(40, 34, 30))

    skin = Image.new("L", (IMAGE_SIZE, IMAGE_SIZE), 0)
    d = ImageDraw.Draw(skin)
    draw_polygon(d, skin_ring, 255)

    hair = Image.new("L", (IMAGE_SIZE, IMAGE_SIZE), 0)
    d = ImageDraw.Draw(hair)
    draw_polygon(d, hair_outer, 255)
    draw_polygon(d, skin_ring, 0)
    if fringe:
        # fringe dips over the outer left eyebrow: hair must win over the part
        blob = ellipse_polygon(-0.62, -0.60, 0.20, 0.13, scale, rotation, center)
        draw_polygon(d, blob, 255)
    return img, skin, hair


def main() -> None:
    rng = np.random.default_rng(20240817)
    template = face_template()

    root = REPO / "tests" / "fixtures" / "dataset"
    masks = REPO / "tests" / "fixtures" / "masks"
    for sub in ("images", "landmarks"):
        (root / sub).mkdir(parents=True, exist_ok=True)
    for sub in ("skin", "hair"):
        (masks / sub).mkdir(parents=True, exist_ok=True)

    params = [
        ("sample_001", 52.0, 0.00, (80.0, 84.0), False),
        ("sample_002", 48.0, 0.06, (78.0, 86.0), False),
        ("sample_003", 55.0, -0.05, (82.0, 82.0), False),
        ("sample_004", 50.0, 0.02, (80.0, 85.0), True),
        ("sample_005", 53.0, -0.08, (79.0, 83.0), False),
        ("sample_006", 47.0, 0.09, (81.0, 86.0), False),
    ]
    for sample_id, scale, rotation, center, fringe in params:
        jitter = rng.normal(0.0, 0.004, size=template.shape)
        pts = place(template + jitter, scale, rotation, center)
        img, skin, hair = render_sample(pts, scale, rotation, center, fringe)
        img.save(root / "images" / f"{sample_id}.png")
        skin.save(masks / "skin" / f"{sample_id}.png")
        hair.save(masks / "hair" / f"{sample_id}.png")
        landmarks = LandmarkSet(
            tuple((round(float(x), 6), round(float(y), 6)) for x, y in pts),
            (), IMAGE_SIZE, IMAGE_SIZE,
        )
        save_landmark_file(root / "landmarks" / f"{sample_id}.txt", landmarks)

    (root / "train.txt").write_text(
        "".join(f"{p[0]}\n" for p in params[:4]))
    (root / "val.txt").write_text(f"{params[4][0]}\n")
    (root / "test.txt").write_text(f"{params[5][0]}\n")
    print(f"fixture written under {root} and {masks}")


if __name__ == "__main__":
    main()
