import numpy as np
import pytest

import oracles
from faceparse.compositor import fuse, rasterize
from faceparse.errors import DimensionMismatch
from faceparse.fitting import Contour


def test_axis_aligned_square():
    contour = Contour([(0.0, 0.0), (4.0, 0.0), (4.0, 4.0), (0.0, 4.0)])
    mask = rasterize(contour, 8, 8)
    assert mask.sum() == 16
    assert mask[:4, :4].all()
    assert not mask[4:, :].any() and not mask[:, 4:].any()
    oracle = np.array(oracles.rasterize_by_centers(contour.to_list(), 8, 8))
    assert np.array_equal(mask, oracle)


def test_contour_outside_image_is_empty():
    contour = Contour([(100.0, 100.0), (120.0, 100.0), (110.0, 120.0)])
    assert not rasterize(contour, 32, 32).any()


def test_random_polygons_match_oracle():
    rng = np.random.default_rng(1234)
    for trial in range(120):
        n = int(rng.integers(3, 13))
        verts = oracles.random_star_polygon(
            rng, n, (rng.uniform(4, 28), rng.uniform(4, 28)), (2.0, 14.0)
        )
        mask = rasterize(Contour(verts), 32, 32)
        oracle = np.array(oracles.rasterize_by_centers(verts, 32, 32))
        assert np.array_equal(mask, oracle), f"trial {trial}"


def test_area_close_to_analytic():
    rng = np.random.default_rng(99)
    for _ in range(40):
        verts = oracles.random_star_polygon(rng, 8, (16.0, 16.0), (3.0, 12.0))
        mask = rasterize(Contour(verts), 32, 32)
        area = oracles.shoelace_area(verts)
        bound = 1.5 * oracles.perimeter(verts)
        assert abs(int(mask.sum()) - area) <= bound


def test_fuse_empty_layers_all_background():
    labels = fuse(None, [], None, 6, 4)
    assert labels.shape == (4, 6)
    assert (labels == 0).all()


def test_fuse_hair_wins_over_eye():
    eye = np.zeros((8, 8), dtype=bool)
    hair = np.zeros((8, 8), dtype=bool)
    eye[2:5, 2:5] = True
    hair[3:8, 3:8] = True
    labels = fuse(None, [(4, eye)], hair, 8, 8)
    assert (labels[eye & hair] == 10).all()
    assert (labels[eye & ~hair] == 4).all()


def test_fuse_matches_last_writer_oracle():
    rng = np.random.default_rng(4321)
    for _ in range(200):
        skin = rng.random((16, 16)) < 0.5
        hair = rng.random((16, 16)) < 0.3
        parts = [
            (int(cid), rng.random((16, 16)) < 0.25)
            for cid in rng.choice(np.arange(2, 10), size=4, replace=False)
        ]
        labels = fuse(skin, parts, hair, 16, 16)
        oracle = oracles.fuse_last_writer(
            skin.tolist(), [(c, m.tolist()) for c, m in parts], hair.tolist(), 16, 16
        )
        assert np.array_equal(labels, np.array(oracle, dtype=np.uint8))


def test_fuse_disjoint_parts_order_independent():
    rng = np.random.default_rng(5)
    base = rng.integers(0, 4, size=(12, 12))
    parts = [(cid, base == cid - 2) for cid in (2, 3, 4)]
    a = fuse(None, parts, None, 12, 12)
    b = fuse(None, parts[::-1], None, 12, 12)
    assert np.array_equal(a, b)


def test_fuse_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        fuse(np.zeros((4, 4), dtype=bool), [], None, 8, 8)
    with pytest.raises(DimensionMismatch):
        fuse(None, [(4, np.zeros((2, 2), dtype=bool))], None, 8, 8)
