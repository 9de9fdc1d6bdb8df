import itertools

import numpy as np
import pytest

import oracles
from faceparse.boundary import extract_boundary, make_weight_map
from faceparse.errors import NegativeAlpha


def test_constant_map_has_no_boundary():
    assert not extract_boundary(np.full((9, 7), 3)).any()


def test_two_column_split():
    labels = np.asarray([[1, 1, 2, 2]] * 4)
    boundary = extract_boundary(labels)
    assert boundary.sum() == 8
    assert boundary[:, 1].all() and boundary[:, 2].all()
    assert not boundary[:, 0].any() and not boundary[:, 3].any()


def test_exhaustive_3x3_patterns():
    for bits in itertools.product((0, 1), repeat=9):
        labels = np.asarray(bits).reshape(3, 3)
        expected = np.asarray(oracles.boundary_4n(labels.tolist()))
        assert np.array_equal(extract_boundary(labels), expected), bits


def test_flagging_is_symmetric():
    rng = np.random.default_rng(17)
    for _ in range(50):
        labels = rng.integers(0, 4, size=(10, 10))
        boundary = extract_boundary(labels)
        # every flagged pixel has a differing 4-neighbor that is also flagged
        ys, xs = np.nonzero(boundary)
        for y, x in zip(ys, xs):
            partners = [
                (y + dy, x + dx)
                for dy, dx in ((-1, 0), (1, 0), (0, -1), (0, 1))
                if 0 <= y + dy < 10 and 0 <= x + dx < 10
                and labels[y + dy, x + dx] != labels[y, x]
            ]
            assert partners
            assert all(boundary[p] for p in partners)


def test_mirror_commutation():
    rng = np.random.default_rng(23)
    for _ in range(100):
        labels = rng.integers(0, 11, size=(9, 13))
        b = extract_boundary(labels)
        assert np.array_equal(extract_boundary(labels[::-1]), b[::-1])
        assert np.array_equal(extract_boundary(labels[:, ::-1]), b[:, ::-1])


def test_weight_map_values():
    boundary = np.zeros((5, 5), dtype=bool)
    boundary[2, 3] = True
    weights = make_weight_map(boundary, 200.0)
    assert weights[2, 3] == 201.0
    assert (weights[~boundary] == 1.0).all()


def test_weight_map_alpha_zero():
    boundary = np.ones((4, 4), dtype=bool)
    assert (make_weight_map(boundary, 0.0) == 1.0).all()


def test_weight_sum_counting():
    rng = np.random.default_rng(31)
    for _ in range(50):
        labels = rng.integers(0, 3, size=(8, 8))
        boundary = extract_boundary(labels)
        alpha = float(rng.uniform(0, 300))
        weights = make_weight_map(boundary, alpha)
        expected = labels.size + alpha * int(boundary.sum())
        assert weights.sum() == pytest.approx(expected, rel=1e-12)


def test_monotone_in_alpha():
    boundary = np.eye(6, dtype=bool)
    w1 = make_weight_map(boundary, 10.0)
    w2 = make_weight_map(boundary, 20.0)
    assert (w2 >= w1).all()


def test_negative_alpha_rejected():
    with pytest.raises(NegativeAlpha):
        make_weight_map(np.zeros((2, 2), dtype=bool), -0.5)
