"""End-to-end annotation: landmarks in, label/boundary maps out."""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .boundary import extract_boundary
from .compositor import fuse, rasterize
from .dataset import DatasetManifest, Sample
from .fitting import Contour, contour_is_simple, fit_part
from .labelio import (
    image_size,
    label_map_png_bytes,
    atomic_write_bytes,
    read_mask,
    write_mask,
)
from .landmarks import LandmarkSet, load_landmark_file
from .schema import PartSchema

log = logging.getLogger(__name__)

WORKERS_ENV = "FACEPARSE_WORKERS"


@dataclass(frozen=True)
class PartContour:
    category_id: int
    category: str
    contour: Contour


def fit_parts(landmarks: LandmarkSet, schema: PartSchema) -> list[PartContour]:
    """Fit every schema entry; invisible/unfittable parts are skipped."""
    pts = np.asarray(landmarks.points, dtype=float)
    vis = np.asarray(landmarks.visibility, dtype=bool)
    out = []
    for entry in schema.entries:
        contour = fit_part(entry, pts, vis)
        if contour is None:
            log.info("part %s skipped (not enough visible points)", entry.category)
            continue
        if not contour_is_simple(contour):
            log.warning("part %s produced a self-intersecting contour", entry.category)
        out.append(PartContour(entry.category_id, entry.category, contour))
    return out


def compose_label_map(
    landmarks: LandmarkSet,
    schema: PartSchema,
    width: int,
    height: int,
    skin: np.ndarray | None = None,
    hair: np.ndarray | None = None,
) -> tuple[np.ndarray, list[PartContour]]:
    """Rasterize all fitted parts and fuse them with the skin/hair layers."""
    parts = fit_parts(landmarks, schema)
    masks = [(p.category_id, rasterize(p.contour, width, height)) for p in parts]
    labels = fuse(skin, masks, hair, width, height)
    return labels, parts


def _load_layer(masks_dir: Path | None, layer: str, sample_id: str,
                width: int, height: int) -> np.ndarray | None:
    if masks_dir is None:
        return None
    path = masks_dir / layer / f"{sample_id}.png"
    if not path.is_file():
        log.info("no %s mask for %s; layer left empty", layer, sample_id)
        return None
    mask = read_mask(path)
    if mask.shape != (height, width):
        raise ValueError(
            f"{path}: mask is {mask.shape}, image is {(height, width)}"
        )
    return mask


@dataclass
class SampleResult:
    sample_id: str
    ok: bool
    error: str | None = None
    category_pixels: dict[int, int] | None = None


def annotate_sample(
    sample: Sample,
    schema: PartSchema,
    masks_dir: Path | None,
    out_dir: Path,
) -> SampleResult:
    try:
        if sample.image_path is None:
            raise FileNotFoundError(f"sample {sample.sample_id} has no image")
        width, height = image_size(sample.image_path)
        landmarks = load_landmark_file(sample.landmark_path, width, height)
        skin = _load_layer(masks_dir, "skin", sample.sample_id, width, height)
        hair = _load_layer(masks_dir, "hair", sample.sample_id, width, height)
        labels, _ = compose_label_map(landmarks, schema, width, height, skin, hair)

        atomic_write_bytes(
            out_dir / "labels" / f"{sample.sample_id}.png",
            label_map_png_bytes(labels),
        )
        write_mask(
            out_dir / "boundaries" / f"{sample.sample_id}.png",
            extract_boundary(labels),
        )
        ids, counts = np.unique(labels, return_counts=True)
        return SampleResult(
            sample.sample_id, True,
            category_pixels={int(i): int(c) for i, c in zip(ids, counts)},
        )
    except Exception as exc:  # per-sample isolation: one bad file must not kill the run
        log.error("sample %s failed: %s", sample.sample_id, exc)
        return SampleResult(sample.sample_id, False, error=str(exc))


def default_workers() -> int:
    env = os.environ.get(WORKERS_ENV)
    if env:
        return max(1, int(env))
    return min(8, os.cpu_count() or 1)


def annotate_dataset(
    manifest: DatasetManifest,
    schema: PartSchema,
    masks_dir: Path | None,
    out_dir: Path,
    splits=("train", "val", "test"),
    workers: int | None = None,
) -> list[SampleResult]:
    """Annotate every sample of the chosen splits with a bounded pool."""
    out_dir = Path(out_dir)
    ids = manifest.ordered_ids(splits)
    samples = [manifest.samples[i] for i in ids]
    workers = workers or default_workers()
    if workers == 1 or len(samples) <= 1:
        return [annotate_sample(s, schema, masks_dir, out_dir) for s in samples]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(annotate_sample, s, schema, masks_dir, out_dir)
            for s in samples
        ]
        return [f.result() for f in futures]
