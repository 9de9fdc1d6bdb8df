"""Part schema: which landmark indices outline each facial part, and how.

The 106-point convention itself never fixes index semantics, so the
assignment lives in a JSON config (see ``data/default_schema.json`` and
docs/SCHEMA.md).  The shipped default is this repo's own convention and is
swappable; nothing in the fitting code hardcodes indices.

Strategies:
  polygon        closed outline through ``indices`` (smoothed)
  parabola_pair  ``upper``/``lower`` arcs, one least-squares parabola each
  piecewise_nose ``left``/``right`` open chains stitched along the bridge
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .categories import CATEGORY_IDS, FITTED_CATEGORIES, category_name
from .errors import (
    BadStrategy,
    DuplicateCategory,
    IndexOutOfRange,
    MissingCategory,
    SchemaError,
)
from .landmarks import POINT_COUNT

STRATEGIES = ("polygon", "parabola_pair", "piecewise_nose")

DEFAULT_SMOOTHING = 4
DEFAULT_PARABOLA_SAMPLES = 16


@dataclass(frozen=True)
class PartEntry:
    category_id: int
    strategy: str
    indices: tuple[int, ...]            # all landmark indices of the part
    smoothing: int = DEFAULT_SMOOTHING  # interpolated points per segment (rho)
    closed: bool = True
    upper: tuple[int, ...] = ()         # parabola_pair arcs, corner to corner
    lower: tuple[int, ...] = ()
    left: tuple[int, ...] = ()          # piecewise_nose chains, bridge to base
    right: tuple[int, ...] = ()
    samples: int = DEFAULT_PARABOLA_SAMPLES

    @property
    def category(self) -> str:
        return category_name(self.category_id)


@dataclass(frozen=True)
class PartSchema:
    name: str
    entries: tuple[PartEntry, ...] = field(default=())

    def entry(self, category_id: int) -> PartEntry:
        for e in self.entries:
            if e.category_id == category_id:
                return e
        raise KeyError(category_id)


def _index_list(raw, what: str) -> tuple[int, ...]:
    if not isinstance(raw, list) or not raw:
        raise SchemaError(f"{what} must be a non-empty list of indices")
    out = []
    for v in raw:
        if not isinstance(v, int) or isinstance(v, bool):
            raise SchemaError(f"{what} contains a non-integer index: {v!r}")
        if not 0 <= v < POINT_COUNT:
            raise IndexOutOfRange(f"{what} index {v} outside 0..{POINT_COUNT - 1}")
        out.append(v)
    return tuple(out)


def _dedup_keep_order(*groups) -> tuple[int, ...]:
    seen, out = set(), []
    for g in groups:
        for i in g:
            if i not in seen:
                seen.add(i)
                out.append(i)
    return tuple(out)


def _parse_entry(raw: dict) -> PartEntry:
    name = raw.get("category")
    if name not in CATEGORY_IDS:
        raise SchemaError(f"unknown category {name!r}")
    cid = CATEGORY_IDS[name]
    if cid not in FITTED_CATEGORIES:
        raise SchemaError(f"category {name!r} is not landmark-fitted")
    strategy = raw.get("strategy")
    if strategy not in STRATEGIES:
        raise BadStrategy(f"unknown strategy {strategy!r} for {name}")
    smoothing = raw.get("smoothing", DEFAULT_SMOOTHING)
    if not isinstance(smoothing, int) or smoothing < 1:
        raise SchemaError(f"smoothing for {name} must be an integer >= 1")

    if strategy == "polygon":
        indices = _index_list(raw.get("indices"), f"{name}.indices")
        if len(indices) < 3:
            raise SchemaError(f"{name}: polygon needs >= 3 indices")
        return PartEntry(
            cid, strategy, indices, smoothing,
            closed=bool(raw.get("closed", True)),
        )

    if strategy == "parabola_pair":
        upper = _index_list(raw.get("upper"), f"{name}.upper")
        lower = _index_list(raw.get("lower"), f"{name}.lower")
        if len(upper) < 3 or len(lower) < 3:
            raise SchemaError(f"{name}: each arc needs >= 3 indices")
        samples = raw.get("samples", DEFAULT_PARABOLA_SAMPLES)
        if not isinstance(samples, int) or samples < 2:
            raise SchemaError(f"{name}: samples must be an integer >= 2")
        return PartEntry(
            cid, strategy, _dedup_keep_order(upper, lower), smoothing,
            upper=upper, lower=lower, samples=samples,
        )

    left = _index_list(raw.get("left"), f"{name}.left")
    right = _index_list(raw.get("right"), f"{name}.right")
    if len(left) < 2 or len(right) < 2:
        raise SchemaError(f"{name}: each nose chain needs >= 2 indices")
    return PartEntry(
        cid, strategy, _dedup_keep_order(left, right), smoothing,
        left=left, right=right,
    )


def load_part_schema(config) -> PartSchema:
    """Load and validate a schema from JSON bytes/str, a dict, or a path."""
    if isinstance(config, (str, Path)) and "\n" not in str(config) and Path(str(config)).is_file():
        config = Path(config).read_bytes()
    if isinstance(config, bytes):
        config = config.decode("utf-8")
    if isinstance(config, str):
        try:
            config = json.loads(config)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"schema is not valid JSON: {exc}") from None
    if not isinstance(config, dict) or not isinstance(config.get("parts"), list):
        raise SchemaError("schema must be an object with a 'parts' list")

    entries = []
    seen = set()
    for raw in config["parts"]:
        entry = _parse_entry(raw)
        if entry.category_id in seen:
            raise DuplicateCategory(f"category {entry.category!r} listed twice")
        seen.add(entry.category_id)
        entries.append(entry)
    missing = [category_name(c) for c in FITTED_CATEGORIES if c not in seen]
    if missing:
        raise MissingCategory(f"schema misses categories: {', '.join(missing)}")
    return PartSchema(str(config.get("name", "unnamed")), tuple(entries))


def default_schema() -> PartSchema:
    data = resources.files("faceparse.data").joinpath("default_schema.json")
    return load_part_schema(data.read_bytes())
