import json

import numpy as np
import pytest

from faceparse.cli import main
from faceparse.labelio import read_label_map, write_label_map


def read_bytes(path):
    return path.read_bytes()


def test_annotate_reproduces_goldens(fixture_dataset, fixture_masks, golden_dir, tmp_path):
    out = tmp_path / "out"
    code = main([
        "annotate",
        "--root", str(fixture_dataset),
        "--masks", str(fixture_masks),
        "--out", str(out),
    ])
    assert code == 0
    golden_labels = sorted((golden_dir / "labels").glob("*.png"))
    assert len(golden_labels) == 6
    for golden in golden_labels:
        produced = out / "labels" / golden.name
        assert read_bytes(produced) == read_bytes(golden), golden.name
    for golden in sorted((golden_dir / "boundaries").glob("*.png")):
        produced = out / "boundaries" / golden.name
        assert read_bytes(produced) == read_bytes(golden), golden.name


def test_annotate_is_deterministic(fixture_dataset, fixture_masks, tmp_path):
    outs = []
    for run in ("run1", "run2"):
        out = tmp_path / run
        assert main([
            "annotate", "--root", str(fixture_dataset),
            "--masks", str(fixture_masks), "--out", str(out),
        ]) == 0
        outs.append(out)
    for sub in ("labels", "boundaries"):
        for f1 in sorted((outs[0] / sub).glob("*.png")):
            f2 = outs[1] / sub / f1.name
            assert read_bytes(f1) == read_bytes(f2)


def test_annotate_without_masks_is_parts_only(fixture_dataset, tmp_path):
    out = tmp_path / "nomask"
    assert main([
        "annotate", "--root", str(fixture_dataset),
        "--masks", "none", "--out", str(out), "--split", "val",
    ]) == 0
    labels = read_label_map(out / "labels" / "sample_005.png")
    present = set(np.unique(labels).tolist())
    assert present <= {0, 2, 3, 4, 5, 6, 7, 8, 9}
    assert 1 not in present and 10 not in present


def test_annotate_failure_exit_code(scratch_dataset, tmp_path, capsys):
    # break one landmark file: fitting still parses 106 points is required,
    # so corrupt the count line instead
    bad = scratch_dataset / "landmarks" / "sample_002.txt"
    bad.write_text("3\n0 0\n1 1\n2 2\n")
    code = main([
        "annotate", "--root", str(scratch_dataset),
        "--masks", "none", "--out", str(tmp_path / "o"),
    ])
    assert code == 1
    assert "sample_002" in capsys.readouterr().err


def test_eval_perfect_scores(golden_dir, tmp_path, capsys):
    report = tmp_path / "scores.json"
    code = main([
        "eval",
        "--pred", str(golden_dir / "labels"),
        "--gt", str(golden_dir / "labels"),
        "--json", str(report),
    ])
    assert code == 0
    out = capsys.readouterr().out
    assert "overall (micro): 100.00" in out
    payload = json.loads(report.read_text())
    assert payload["mean_f1"] == pytest.approx(1.0)
    assert payload["merged_f1"]["mouth"] == pytest.approx(1.0)
    assert payload["num_images"] == 6


def test_eval_detects_differences(golden_dir, tmp_path):
    pred_dir = tmp_path / "pred"
    pred_dir.mkdir()
    for f in (golden_dir / "labels").glob("*.png"):
        labels = read_label_map(f)
        write_label_map(pred_dir / f.name, np.zeros_like(labels))
    report = tmp_path / "scores.json"
    assert main([
        "eval", "--pred", str(pred_dir),
        "--gt", str(golden_dir / "labels"), "--json", str(report),
    ]) == 0
    payload = json.loads(report.read_text())
    assert payload["mean_f1"] == pytest.approx(0.0)
    assert payload["per_category"]["background"]["recall"] == pytest.approx(1.0)


def test_boundary_command(golden_dir, tmp_path):
    out = tmp_path / "b"
    code = main([
        "boundary",
        "--labels", str(golden_dir / "labels" / "sample_001.png"),
        "--out", str(out), "--weights", "--alpha", "200",
    ])
    assert code == 0
    assert (out / "sample_001.png").is_file()
    weights = np.load(out / "sample_001_weights.npy")
    assert set(np.unique(weights).tolist()) <= {1.0, 201.0}


def test_loss_check(golden_dir, tmp_path, capsys):
    labels = read_label_map(golden_dir / "labels" / "sample_001.png")
    h, w = labels.shape
    rng = np.random.default_rng(0)
    sem = rng.random((h, w, 11)) + 1e-3
    sem /= sem.sum(axis=2, keepdims=True)
    np.save(tmp_path / "sem.npy", sem)
    np.save(tmp_path / "bnd.npy", rng.random((h, w)))
    np.save(tmp_path / "fus.npy", sem)
    report = tmp_path / "losses.json"
    code = main([
        "loss-check",
        "--labels", str(golden_dir / "labels" / "sample_001.png"),
        "--semantic", str(tmp_path / "sem.npy"),
        "--boundary", str(tmp_path / "bnd.npy"),
        "--fusion", str(tmp_path / "fus.npy"),
        "--json", str(report),
    ])
    assert code == 0
    payload = json.loads(report.read_text())
    expected = payload["semantic"] + payload["boundary"] + 2 * payload["fusion"]
    assert payload["total"] == pytest.approx(expected)
    assert "semantic" in capsys.readouterr().out


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["annotate"])  # missing required flags
    assert exc.value.code == 2
