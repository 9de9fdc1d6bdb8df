import numpy as np
import pytest

from faceparse.labelio import (
    read_label_map,
    read_mask,
    write_label_map,
    write_mask,
)
from faceparse.rle import decode_label_rows, encode_label_rows


def test_rle_simple_row():
    labels = np.asarray([[0, 0, 4, 4, 4, 0]], dtype=np.uint8)
    rows = encode_label_rows(labels)
    assert rows == [[0, 2, 4, 3, 0, 1]]
    assert np.array_equal(decode_label_rows(rows, 6), labels)


def test_rle_round_trip_random():
    rng = np.random.default_rng(6)
    for _ in range(100):
        h, w = int(rng.integers(1, 20)), int(rng.integers(1, 20))
        labels = rng.integers(0, 11, size=(h, w)).astype(np.uint8)
        rows = encode_label_rows(labels)
        assert np.array_equal(decode_label_rows(rows, w), labels)
        for row in rows:
            assert sum(row[1::2]) == w


def test_rle_decode_validation():
    with pytest.raises(ValueError):
        decode_label_rows([[0, 2, 1]], 4)
    with pytest.raises(ValueError):
        decode_label_rows([[0, 5]], 4)
    with pytest.raises(ValueError):
        decode_label_rows([[0, 2]], 4)


def test_label_map_round_trip(tmp_path):
    rng = np.random.default_rng(8)
    for i in range(100):
        h, w = int(rng.integers(2, 40)), int(rng.integers(2, 40))
        labels = rng.integers(0, 11, size=(h, w)).astype(np.uint8)
        path = tmp_path / f"label_{i}.png"
        write_label_map(path, labels)
        assert np.array_equal(read_label_map(path), labels)


def test_label_map_rejects_bad_values(tmp_path):
    with pytest.raises(ValueError):
        write_label_map(tmp_path / "x.png", np.full((4, 4), 11, dtype=np.uint8))


def test_mask_round_trip(tmp_path):
    rng = np.random.default_rng(9)
    for i in range(100):
        h, w = int(rng.integers(2, 40)), int(rng.integers(2, 40))
        mask = rng.random((h, w)) < 0.5
        path = tmp_path / f"mask_{i}.png"
        write_mask(path, mask)
        assert np.array_equal(read_mask(path), mask)


def test_write_is_atomic_no_temp_left(tmp_path):
    write_label_map(tmp_path / "a.png", np.zeros((4, 4), dtype=np.uint8))
    leftovers = [p for p in tmp_path.iterdir() if p.name != "a.png"]
    assert leftovers == []
