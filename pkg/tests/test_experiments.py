import numpy as np
import pytest

from conftest import random_measure
from pettylab import errors
from pettylab.experiments import continuity_experiment, degenerate_family_demo, random_audit
from pettylab.functionals import AUDIT_KINDS, ball_capacitary_setup
from pettylab.measures import ball_volume, from_arrays
from pettylab.orlicz import parse_phi
from pettylab.solver import SolveConfig, capacitary_spec, make_spec


def test_continuity_rows(rng):
    mu = random_measure(rng, 2, 7)
    spec = make_spec("plain_polar", mu, parse_phi("pow:1"))
    rows = continuity_experiment(spec, [1e-2, 1e-3], seed=3, config=SolveConfig(starts=2))
    assert rows[0].delta == 0.0 and rows[0].objective_gap == 0.0 and rows[0].hausdorff == 0.0
    assert rows[1].objective_gap > rows[2].objective_gap
    assert rows[1].hausdorff > rows[2].hausdorff
    # gap bounded by phi-modulus heuristic: pow:1 changes by at most delta * mass-weighted h
    assert rows[1].objective_gap <= 1e-2 * rows[0].objective * 2
    with pytest.raises(errors.InvalidParameter):
        continuity_experiment(make_spec("plain_polar", mu, parse_phi("pow:0.5")), [1e-2])


def test_continuity_capacitary():
    s = ball_capacitary_setup(2, 1.5, 1, 16)
    spec = capacitary_spec(s, parse_phi("pow:2"))
    rows = continuity_experiment(spec, [1e-2, 1e-3], seed=1, config=SolveConfig(starts=2))
    assert rows[1].objective_gap > rows[2].objective_gap


def test_degenerate_ii_bound(rng):
    mu = random_measure(rng, 2, 6)
    eps = [0.5, 0.2, 0.1]
    for ph in ("pow:1", "expn"):
        phi = parse_phi(ph)
        rows = degenerate_family_demo("ii", eps, mu, phi)
        for r, e in zip(rows, eps):
            assert r.objective >= float(phi(1 / e)) * mu.weights[0]
            assert r.polar_volume_error <= 1e-6


def test_degenerate_ii_example():
    mu = from_arrays([[1, 0], [0, 1], [-1, 0], [0, -1], [0.6, 0.8]], [1, 1, 1, 1, 0.5])
    row = degenerate_family_demo("ii", [0.1], mu, parse_phi("pow:1"))[0]
    assert row.objective >= 10.0


def test_degenerate_ii_decreasing_class(rng):
    mu = random_measure(rng, 2, 6)
    rows = degenerate_family_demo("ii", [0.5, 0.2, 0.1], mu, parse_phi("ipow:1"))
    obj = [r.objective for r in rows]
    assert obj[0] < obj[1] < obj[2]


def test_degenerate_i_bound_generic(rng):
    # the bound holds for every measure, monotonicity only for small eps
    phi = parse_phi("ipow:2")
    for _ in range(5):
        mu = random_measure(rng, 3, 8)
        alpha = np.abs(mu.directions[:, 0]).min()
        eps = [0.5, 0.2, 0.1, 0.05, 0.01]
        for r, e in zip(degenerate_family_demo("i", eps, mu, phi, resolution=800), eps):
            assert r.objective <= float(phi(alpha / e)) * mu.mass * (1 + 1e-9)


def test_degenerate_errors(rng):
    mu = random_measure(rng, 2, 6)
    phi = parse_phi("ipow:1")
    with pytest.raises(errors.ConditioningGuard):
        degenerate_family_demo("i", [0.1, 1e-7], mu, phi)
    with pytest.raises(errors.InvalidParameter):
        degenerate_family_demo("i", [0.1, 0.2], mu, phi)
    with pytest.raises(errors.InvalidParameter):
        degenerate_family_demo("i", [0.1], mu, parse_phi("pow:1"))
    with pytest.raises(errors.InvalidParameter):
        degenerate_family_demo("iii", [0.1], mu, phi)
    axis = from_arrays([[1, 0], [0, 1], [-1, 0], [0, -1]], [1] * 4)
    with pytest.raises(errors.InvalidParameter):
        degenerate_family_demo("i", [0.1], axis, phi)


@pytest.mark.parametrize("kind", AUDIT_KINDS)
def test_random_audit(kind):
    rows = random_audit(kind, 12, seed=5)
    assert len(rows) == 12 and all(r.kind == kind for r in rows)
    assert min(r.margin for r in rows) >= -1e-9
    again = random_audit(kind, 12, seed=5)
    assert [r.lhs for r in rows] == [r.lhs for r in again]
