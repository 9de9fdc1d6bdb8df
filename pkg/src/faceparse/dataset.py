"""Dataset layout scanning and the manifest.

Expected tree:

    root/
      train.txt  val.txt  test.txt     one sample id per line
      images/<id>.(png|jpg|jpeg)       required for annotation runs
      landmarks/<id>.txt               required for every listed id
      labels/<id>.png                  optional until annotated

Split lists must be disjoint and every id must resolve to a landmark
file; images and labels are looked up lazily.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import DanglingId, DuplicateSampleId, MissingSplitFile

SPLITS = ("train", "val", "test")
IMAGE_EXTENSIONS = (".png", ".jpg", ".jpeg")


@dataclass(frozen=True)
class Sample:
    sample_id: str
    split: str
    landmark_path: Path
    image_path: Path | None
    label_path: Path | None


@dataclass(frozen=True)
class DatasetManifest:
    root: Path
    splits: dict[str, tuple[str, ...]]
    samples: dict[str, Sample]

    def ordered_ids(self, splits=SPLITS) -> list[str]:
        out = []
        for split in splits:
            out.extend(self.splits.get(split, ()))
        return out

    def split_counts(self) -> dict[str, int]:
        return {split: len(ids) for split, ids in self.splits.items()}

    def to_dict(self) -> dict:
        return {
            "root": str(self.root),
            "splits": {k: list(v) for k, v in self.splits.items()},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DatasetManifest":
        root = Path(data["root"])
        manifest = DatasetManifest(root, {}, {})
        splits = {}
        samples = {}
        for split, ids in data["splits"].items():
            splits[split] = tuple(ids)
            for sid in ids:
                samples[sid] = _resolve_sample(root, sid, split)
        return cls(root, splits, samples)

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n")

    @classmethod
    def load(cls, path) -> "DatasetManifest":
        return cls.from_dict(json.loads(Path(path).read_text()))


def _resolve_sample(root: Path, sample_id: str, split: str) -> Sample:
    landmark = root / "landmarks" / f"{sample_id}.txt"
    if not landmark.is_file():
        raise DanglingId(f"{split}: id {sample_id!r} has no landmark file {landmark}")
    image = None
    for ext in IMAGE_EXTENSIONS:
        candidate = root / "images" / f"{sample_id}{ext}"
        if candidate.is_file():
            image = candidate
            break
    label = root / "labels" / f"{sample_id}.png"
    return Sample(sample_id, split, landmark, image, label if label.is_file() else None)


def scan_dataset(root) -> DatasetManifest:
    """Read split files, resolve every sample, validate the layout."""
    root = Path(root)
    splits: dict[str, tuple[str, ...]] = {}
    samples: dict[str, Sample] = {}
    seen: dict[str, str] = {}
    for split in SPLITS:
        split_file = root / f"{split}.txt"
        if not split_file.is_file():
            raise MissingSplitFile(f"missing split file {split_file}")
        ids = [ln.strip() for ln in split_file.read_text().splitlines() if ln.strip()]
        for sid in ids:
            if sid in seen:
                raise DuplicateSampleId(
                    f"id {sid!r} appears in both {seen[sid]} and {split}"
                )
            seen[sid] = split
            samples[sid] = _resolve_sample(root, sid, split)
        splits[split] = tuple(ids)
    return DatasetManifest(root, splits, samples)
