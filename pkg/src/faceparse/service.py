"""HTTP annotation service: stateless fitting plus editing sessions.

Versioned JSON API under /v1 (see docs/API.md).  Sessions hold a working
landmark set with a bounded undo stack and optimistic concurrency: every
mutation must echo the current revision or it is rejected with 409.
Malformed payloads answer 400; payloads that parse but violate landmark
or schema rules answer 422.
"""

from __future__ import annotations

import threading
import uuid
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import FileResponse, JSONResponse
from pydantic import BaseModel

from .categories import CATEGORY_NAMES, PALETTE
from .compositor import rasterize, fuse
from .errors import CountMismatch, FaceParseError, MalformedLine
from .labelio import atomic_write_bytes, image_size, label_map_png_bytes
from .landmarks import (
    LandmarkSet,
    load_landmark_file,
    parse_landmark_file,
    serialize_landmarks,
)
from .pipeline import _load_layer, fit_parts
from .rle import encode_label_rows
from .schema import PartSchema, default_schema, load_part_schema

DEFAULT_MAX_UNDO = 100


class FitRequest(BaseModel):
    landmarks: list[tuple[float, float]]
    width: int
    height: int
    visibility: list[bool] | None = None


class PointUpdate(BaseModel):
    index: int
    x: float
    y: float


class PatchPointsRequest(BaseModel):
    revision: int
    updates: list[PointUpdate]


class OpenSessionRequest(BaseModel):
    sample_id: str


@dataclass
class Session:
    session_id: str
    sample_id: str
    landmarks: LandmarkSet
    width: int
    height: int
    revision: int = 0
    dirty: bool = False
    undo_stack: deque = field(default_factory=deque)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def view(self, **extra) -> dict:
        body = {
            "session_id": self.session_id,
            "sample_id": self.sample_id,
            "revision": self.revision,
            "width": self.width,
            "height": self.height,
            "landmarks": [[x, y] for x, y in self.landmarks.points],
            "dirty": self.dirty,
            "undo_depth": len(self.undo_stack),
        }
        body.update(extra)
        return body


def _fit_payload(landmarks: LandmarkSet, schema: PartSchema,
                 width: int, height: int) -> dict:
    parts = fit_parts(landmarks, schema)
    masks = [(p.category_id, rasterize(p.contour, width, height)) for p in parts]
    labels = fuse(None, masks, None, width, height)
    return {
        "width": width,
        "height": height,
        "label_map": {
            "encoding": "row_value_runs",
            "width": width,
            "height": height,
            "rows": encode_label_rows(labels),
        },
        "contours": [
            {
                "category_id": p.category_id,
                "category": p.category,
                "closed": bool(p.contour.closed),
                "points": p.contour.to_list(),
            }
            for p in parts
        ],
    }


def create_app(
    dataset_root=None,
    schema_path=None,
    masks_dir=None,
    max_undo: int = DEFAULT_MAX_UNDO,
    ui_dir=None,
) -> FastAPI:
    from .dataset import DatasetManifest, scan_dataset

    schema = load_part_schema(Path(schema_path)) if schema_path else default_schema()
    masks_path = Path(masks_dir) if masks_dir else None
    manifest: DatasetManifest | None = (
        scan_dataset(dataset_root) if dataset_root else None
    )

    app = FastAPI(title="faceparse annotation service", version="1")
    sessions: dict[str, Session] = {}
    store_lock = threading.Lock()

    @app.exception_handler(RequestValidationError)
    async def malformed_payload(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": exc.errors()})

    def require_manifest() -> DatasetManifest:
        if manifest is None:
            raise HTTPException(404, "service started without a dataset root")
        return manifest

    def get_session(session_id: str) -> Session:
        with store_lock:
            sess = sessions.get(session_id)
        if sess is None:
            raise HTTPException(404, f"unknown session {session_id}")
        return sess

    def load_sample(sample_id: str) -> tuple[LandmarkSet, int, int]:
        m = require_manifest()
        sample = m.samples.get(sample_id)
        if sample is None:
            raise HTTPException(404, f"unknown sample {sample_id}")
        if sample.image_path is None:
            raise HTTPException(422, {"error": "MissingImage", "sample": sample_id})
        width, height = image_size(sample.image_path)
        return load_landmark_file(sample.landmark_path, width, height), width, height

    def persist(sess: Session) -> dict:
        m = require_manifest()
        root = m.root
        lm_path = root / "landmarks" / f"{sess.sample_id}.txt"
        label_path = root / "labels" / f"{sess.sample_id}.png"
        skin = _load_layer(masks_path, "skin", sess.sample_id, sess.width, sess.height)
        hair = _load_layer(masks_path, "hair", sess.sample_id, sess.width, sess.height)
        parts = fit_parts(sess.landmarks, schema)
        masks = [
            (p.category_id, rasterize(p.contour, sess.width, sess.height))
            for p in parts
        ]
        labels = fuse(skin, masks, hair, sess.width, sess.height)
        atomic_write_bytes(lm_path, serialize_landmarks(sess.landmarks))
        atomic_write_bytes(label_path, label_map_png_bytes(labels))
        sess.dirty = False
        return {"landmarks": str(lm_path), "labels": str(label_path)}

    # --- stateless endpoints -------------------------------------------

    @app.get("/v1/health")
    def health():
        return {"status": "ok", "sessions": len(sessions)}

    @app.get("/v1/categories")
    def categories():
        return {
            "categories": [
                {"id": i, "name": name, "color": list(PALETTE[i])}
                for i, name in enumerate(CATEGORY_NAMES)
            ]
        }

    @app.post("/v1/fit")
    def fit(req: FitRequest):
        if req.width <= 0 or req.height <= 0:
            raise HTTPException(422, {"error": "BadDimensions"})
        try:
            landmarks = LandmarkSet(
                tuple((float(x), float(y)) for x, y in req.landmarks),
                tuple(req.visibility) if req.visibility else (),
                req.width,
                req.height,
            )
        except (CountMismatch, MalformedLine) as exc:
            raise HTTPException(
                422, {"error": type(exc).__name__, "message": str(exc)}
            ) from None
        except ValueError as exc:
            raise HTTPException(
                422, {"error": "InvalidCoordinates", "message": str(exc)}
            ) from None
        try:
            return _fit_payload(landmarks, schema, req.width, req.height)
        except FaceParseError as exc:
            raise HTTPException(
                422, {"error": type(exc).__name__, "message": str(exc)}
            ) from None

    # --- dataset browsing ----------------------------------------------

    @app.get("/v1/samples")
    def samples():
        m = require_manifest()
        return {
            "samples": [
                {"id": sid, "split": m.samples[sid].split}
                for sid in m.ordered_ids()
            ]
        }

    @app.get("/v1/samples/{sample_id}/image")
    def sample_image(sample_id: str):
        m = require_manifest()
        sample = m.samples.get(sample_id)
        if sample is None or sample.image_path is None:
            raise HTTPException(404, f"no image for sample {sample_id}")
        return FileResponse(sample.image_path)

    # --- sessions --------------------------------------------------------

    @app.post("/v1/sessions", status_code=201)
    def open_session(req: OpenSessionRequest):
        landmarks, width, height = load_sample(req.sample_id)
        sess = Session(
            session_id=uuid.uuid4().hex,
            sample_id=req.sample_id,
            landmarks=landmarks,
            width=width,
            height=height,
            undo_stack=deque(maxlen=max_undo),
        )
        with store_lock:
            sessions[sess.session_id] = sess
        return sess.view()

    @app.get("/v1/sessions/{session_id}")
    def read_session(session_id: str):
        return get_session(session_id).view()

    @app.patch("/v1/sessions/{session_id}/points")
    def patch_points(session_id: str, req: PatchPointsRequest):
        sess = get_session(session_id)
        with sess.lock:
            if req.revision != sess.revision:
                raise HTTPException(
                    409,
                    {
                        "error": "RevisionConflict",
                        "expected": sess.revision,
                        "got": req.revision,
                    },
                )
            for up in req.updates:
                if not 0 <= up.index < len(sess.landmarks.points):
                    raise HTTPException(
                        422, {"error": "IndexOutOfRange", "index": up.index}
                    )
            inverse = []
            seen = set()
            for up in req.updates:
                if up.index not in seen:
                    seen.add(up.index)
                    old = sess.landmarks.points[up.index]
                    inverse.append((up.index, old[0], old[1]))
            lm = sess.landmarks
            for up in req.updates:
                # quantize to the landmark file precision so save/parse round-trips
                lm = lm.with_point(up.index, round(up.x, 6), round(up.y, 6))
            sess.landmarks = lm
            sess.undo_stack.append(inverse)
            sess.revision += 1
            sess.dirty = True
            return sess.view()

    @app.post("/v1/sessions/{session_id}/undo")
    def undo(session_id: str):
        sess = get_session(session_id)
        with sess.lock:
            if not sess.undo_stack:
                return sess.view(history_exhausted=True)
            inverse = sess.undo_stack.pop()
            lm = sess.landmarks
            for index, x, y in inverse:
                lm = lm.with_point(index, x, y)
            sess.landmarks = lm
            sess.revision += 1
            sess.dirty = True
            return sess.view(history_exhausted=False)

    @app.post("/v1/sessions/{session_id}/save")
    def save(session_id: str):
        sess = get_session(session_id)
        with sess.lock:
            paths = persist(sess)
            sess.revision += 1
            return sess.view(saved=paths)

    @app.post("/v1/sessions/{session_id}/next")
    def next_sample(session_id: str):
        sess = get_session(session_id)
        m = require_manifest()
        with sess.lock:
            saved = persist(sess) if sess.dirty else None
            order = m.ordered_ids()
            idx = order.index(sess.sample_id)
            if idx + 1 >= len(order):
                return sess.view(end_of_manifest=True, saved=saved)
            new_id = order[idx + 1]
            landmarks, width, height = load_sample(new_id)
            sess.sample_id = new_id
            sess.landmarks = landmarks
            sess.width = width
            sess.height = height
            sess.undo_stack.clear()
            sess.dirty = False
            sess.revision += 1
            return sess.view(end_of_manifest=False, saved=saved)

    @app.delete("/v1/sessions/{session_id}", status_code=204)
    def close_session(session_id: str):
        with store_lock:
            sessions.pop(session_id, None)

    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
