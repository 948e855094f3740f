import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_measure
from pettylab import errors
from pettylab.bodies import make_hpolytope
from pettylab.measures import (from_arrays, hemisphere_check, make_measure, perturb_measure,
                               sphere_grid)


def test_make_measure_normalizes():
    mu = make_measure(2, [((1, 0), 1), ((-1, 0), 1), ((0, 1), 1), ((0, -1), 1)])
    assert len(mu) == 4
    assert mu.mass == 4.0
    np.testing.assert_allclose(np.linalg.norm(mu.directions, axis=1), 1.0, atol=1e-12)


def test_duplicates_merge():
    mu = make_measure(2, [((2, 0), 1), ((2, 0), 2)])
    assert len(mu) == 1
    np.testing.assert_allclose(mu.directions[0], [1, 0])
    assert mu.weights[0] == 3.0


@pytest.mark.parametrize("atoms, exc", [
    ([((0, 0, 0), 1)], errors.InvalidAtom),
    ([((1, 0, 0), 0.0)], errors.InvalidWeight),
    ([((1, 0, 0), -2.0)], errors.InvalidWeight),
    ([((1, 0), 1.0)], errors.InvalidAtom),
    ([], errors.EmptyMeasure),
])
def test_make_measure_errors(atoms, exc):
    with pytest.raises(exc):
        make_measure(3, atoms)


def test_hemisphere_examples():
    ok, wit = hemisphere_check(from_arrays([[1, 0], [0, 1], [-1, 0], [0, -1]], [1] * 4))
    assert ok and wit is None
    ok, wit = hemisphere_check(from_arrays([[1, 0], [-1, 0]], [1, 1]))
    assert not ok
    assert abs(abs(wit[1]) - 1.0) < 1e-12 and abs(wit[0]) < 1e-12
    s = 1 / math.sqrt(2)
    mu = from_arrays([[1, 0], [0, 1], [-s, -s]], [1, 1, 1])
    ok, _ = hemisphere_check(mu)
    # dense angular sweep of min_v sum <u_i, v>_+
    t = np.linspace(0, 2 * np.pi, 100000, endpoint=False)
    V = np.column_stack([np.cos(t), np.sin(t)])
    assert ok and np.maximum(V @ mu.directions.T, 0).sum(axis=1).min() > 0


def test_witness_separates(rng):
    for _ in range(20):
        U = rng.standard_normal((6, 3))
        U[:, 2] = np.abs(U[:, 2])      # upper half space
        ok, wit = hemisphere_check(from_arrays(U, np.ones(6)))
        assert not ok
        assert np.all(from_arrays(U, np.ones(6)).directions @ wit <= 1e-10)


def test_hemisphere_weight_invariant(rng):
    for _ in range(10):
        mu = random_measure(rng, 3, 7)
        assert hemisphere_check(mu)[0] == hemisphere_check(mu.scaled(17.0))[0]


def test_passing_measure_gives_bounded_body(rng):
    for _ in range(10):
        mu = random_measure(rng, 2, 6)
        P = make_hpolytope(2, mu.directions, rng.uniform(0.1, 3, len(mu)))
        assert len(P) == 6


def test_sphere_grid():
    d, w = sphere_grid(2, 4)
    assert len(d) == 4
    np.testing.assert_allclose(w, 2 * np.pi / 4)
    assert abs(sphere_grid(2, 360)[1].sum() - 2 * np.pi) < 1e-12
    d, w = sphere_grid(3, 1000)
    assert abs(w.sum() - 4 * np.pi) < 1e-9
    assert np.all(w > 0)
    assert abs(len(d) - 1000) < 50
    with pytest.raises(errors.UnsupportedDimension):
        sphere_grid(4, 100)


def test_perturb(rng):
    mu = random_measure(rng, 2, 8)
    same = perturb_measure(mu, 0.0, 3)
    np.testing.assert_array_equal(same.weights, mu.weights)
    a, b = perturb_measure(mu, 0.1, 7), perturb_measure(mu, 0.1, 7)
    np.testing.assert_array_equal(a.weights, b.weights)
    assert 0.9 * mu.mass <= a.mass <= 1.1 * mu.mass
    with pytest.raises(errors.PerturbationTooLarge):
        perturb_measure(mu, 1.0, 0)


@settings(max_examples=40, deadline=None)
@given(delta=st.floats(0.0, 0.9), seed=st.integers(0, 10 ** 6))
def test_perturb_weak_bound(delta, seed):
    rng = np.random.default_rng(seed)
    mu = random_measure(rng, 2, 6)
    f = np.cos(3 * mu.directions[:, 0]) + mu.directions[:, 1] ** 2
    pert = perturb_measure(mu, delta, seed)
    gap = abs(pert.integrate(f) - mu.integrate(f))
    assert gap <= delta * np.abs(f).max() * mu.mass + 1e-12
