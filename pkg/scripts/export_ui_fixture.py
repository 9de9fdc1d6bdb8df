#!/usr/bin/env python3
"""Export frontend test fixtures from the real service and CLI paths.

Writes, for the validation fixture sample:
  frontend/tests/fixtures/fit_response.json  - actual POST /v1/fit body
  frontend/tests/fixtures/labels.json        - annotate CLI label map (masks: none)
  frontend/tests/fixtures/landmarks.json     - the landmark coordinates used

The parity test decodes the RLE in fit_response.json with the UI's
decoder and must reproduce labels.json bit-exactly.
"""

from __future__ import annotations

import json
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from fastapi.testclient import TestClient  # noqa: E402

from faceparse.cli import main as cli_main  # noqa: E402
from faceparse.labelio import read_label_map  # noqa: E402
from faceparse.landmarks import load_landmark_file  # noqa: E402
from faceparse.service import create_app  # noqa: E402

SAMPLE = "sample_005"


def main() -> None:
    dataset = REPO / "tests" / "fixtures" / "dataset"
    out_dir = REPO / "frontend" / "tests" / "fixtures"
    out_dir.mkdir(parents=True, exist_ok=True)

    landmarks = load_landmark_file(dataset / "landmarks" / f"{SAMPLE}.txt")
    payload = {
        "landmarks": [[x, y] for x, y in landmarks.points],
        "width": 160,
        "height": 160,
    }

    with TestClient(create_app()) as client:
        resp = client.post("/v1/fit", json=payload)
        resp.raise_for_status()
        (out_dir / "fit_response.json").write_text(
            json.dumps(resp.json(), separators=(",", ":")) + "\n"
        )

    with tempfile.TemporaryDirectory() as tmp:
        assert cli_main([
            "annotate", "--root", str(dataset), "--masks", "none",
            "--out", tmp, "--split", "val",
        ]) == 0
        labels = read_label_map(Path(tmp) / "labels" / f"{SAMPLE}.png")

    (out_dir / "labels.json").write_text(
        json.dumps({
            "sample_id": SAMPLE,
            "width": labels.shape[1],
            "height": labels.shape[0],
            "values": labels.tolist(),
        }, separators=(",", ":")) + "\n"
    )
    (out_dir / "landmarks.json").write_text(
        json.dumps({
            "sample_id": SAMPLE,
            "width": 160,
            "height": 160,
            "points": payload["landmarks"],
        }, separators=(",", ":")) + "\n"
    )
    print(f"fixtures written to {out_dir}")


if __name__ == "__main__":
    main()
