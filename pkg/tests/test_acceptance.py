"""Acceptance criteria, one test per criterion (PASS/FAIL summary in conftest)."""
import math
import time

import numpy as np
import pytest

import oracles
from conftest import random_measure
from pettylab import cli
from pettylab.bodies import (HPolytope, facet_areas, hausdorff_distance, polar_volume,
                             random_polytope, scale, tighten, vertices, volume)
from pettylab.experiments import continuity_experiment, degenerate_family_demo, random_audit
from pettylab.functionals import (ball_capacitary_setup, cp_from_measure,
                                  hat_orlicz_mixed_pcapacity, hat_orlicz_mixed_volume,
                                  inequality_audit, orlicz_mixed_pcapacity,
                                  orlicz_mixed_volume, scale_setup)
from pettylab.measures import from_arrays
from pettylab.orlicz import luxemburg_norm, parse_phi
from pettylab.solver import (Mode, SolveConfig, make_spec, solve_capacitary_petty,
                             solve_polar_orlicz)

crit = pytest.mark.criterion


@pytest.fixture(scope="module")
def optima():
    """Solve reports for the square, triangle and uniqueness runs (criteria 1-4)."""
    return {}


@crit(1, "square oracle")
def test_square_oracle(optima):
    a, b, obj = oracles.square_oracle()
    mu = from_arrays([[1, 0], [0, 1], [-1, 0], [0, -1]], [1, 1, 1, 1])
    t0 = time.perf_counter()
    rep = solve_polar_orlicz(mu, parse_phi("pow:1"))
    elapsed = time.perf_counter() - t0
    optima["square"] = rep
    assert a == pytest.approx(b, abs=1e-9)
    np.testing.assert_allclose(rep.normalized_body.supports, a, atol=1e-6)
    assert rep.objective == pytest.approx(obj, abs=1e-6)
    assert elapsed < 5.0


@crit(2, "three-normal oracle")
def test_triangle_oracle(optima):
    h, obj = oracles.triangle_oracle()
    ang = np.deg2rad([90.0, 210.0, 330.0])
    mu = from_arrays(np.column_stack([np.cos(ang), np.sin(ang)]), [1, 1, 1])
    t0 = time.perf_counter()
    rep = solve_polar_orlicz(mu, parse_phi("pow:2"))
    elapsed = time.perf_counter() - t0
    optima["triangle"] = rep
    np.testing.assert_allclose(rep.normalized_body.supports, h, atol=1e-6)
    # the oracle gives 3 h^2 = 1.2404900..., the printed target 1.240372 is off
    assert rep.objective == pytest.approx(obj, abs=1e-6)
    assert elapsed < 5.0


UNIQ_SEEDS = (100, 101, 102, 103, 104)


@crit(3, "uniqueness surrogate, 16 starts agree")
def test_uniqueness_surrogate(optima):
    cfg = SolveConfig(starts=16, seed=0)
    worst = 0.0
    for seed in UNIQ_SEEDS:
        rng = np.random.default_rng(seed)
        mu = random_measure(rng, 2, int(rng.integers(5, 13)))
        assert len(mu) <= 12
        for ph in ("pow:1", "pow:2", "expn"):
            rep = solve_polar_orlicz(mu, parse_phi(ph), cfg)
            optima[(seed, ph)] = rep
            S = np.array(rep.start_supports)
            assert len(S) == 16
            spread = float((S.max(axis=0) - S.min(axis=0)).max())
            worst = max(worst, spread)
            assert not rep.warnings
    assert worst <= 1e-5


@crit(4, "facet activity at the optima")
def test_facet_activity(optima):
    assert len(optima) == 2 + 3 * len(UNIQ_SEEDS), "criteria 1-3 must run first"
    for key, rep in optima.items():
        U = rep.normalized_body.normals
        h = rep.optimal_supports
        # h_P(u_i) from an independent halfspace intersection
        hp = oracles.hpoly_supports(U, h, U)
        assert np.max(h - hp) <= 1e-8, key
        assert rep.facet_activity.max() <= 1e-8


@crit(5, "ball p-capacity and isocapacitary margin")
def test_ball_capacity():
    s = ball_capacitary_setup(3, 2, 1, 1000)
    assert abs(s.cp - 4 * math.pi) / (4 * math.pi) <= 1e-12
    for p in (1.5, 2.0, 2.5):
        setup = ball_capacitary_setup(3, p, 1, 1000)
        assert setup.cp == pytest.approx(oracles.ball_capacity(3, p), rel=1e-12)
        row = inequality_audit("isocapacitary", setup=setup)
        assert abs(row.margin) <= 1e-10


@crit(6, "homogeneity of the homogeneous capacity")
def test_homogeneity():
    rng = np.random.default_rng(6)
    base = ball_capacitary_setup(3, 2.0, 1.0, 300)
    L = random_polytope(3, 12, rng)
    for ph in ("pow:1", "pow:2"):
        phi = parse_phi(ph)
        ref = hat_orlicz_mixed_pcapacity(base, L, phi).value
        for s in (0.5, 0.7, 1.3, 2.0):
            sK = scale_setup(base, s)
            for t in (0.5, 0.7, 1.3, 2.0):
                got = hat_orlicz_mixed_pcapacity(sK, scale(L, t), phi).value
                want = s ** (3 - 2.0 - 1) * t * ref
                assert abs(got - want) <= 1e-9 * abs(want)


@crit(7, "fixed points on random bodies")
def test_fixed_points():
    rng = np.random.default_rng(7)
    phis = [parse_phi(x) for x in ("pow:1", "pow:2", "expn")]
    for k in range(20):
        n = 2 + k % 2
        K = random_polytope(n, int(rng.integers(n + 3, 13)), rng)
        vol = oracles.hpoly_volume(K.normals, K.supports)
        p = 1.3 if n == 2 else 1.8
        setup = cp_from_measure(K, p, random_measure(rng, n, 10))
        for phi in phis:
            assert orlicz_mixed_volume(K, K, phi) == pytest.approx(vol, rel=1e-10)
            assert hat_orlicz_mixed_volume(K, K, phi).value == pytest.approx(n * vol, rel=1e-10)
            assert orlicz_mixed_pcapacity(setup, K, phi) == pytest.approx(setup.cp, rel=1e-10)
            assert hat_orlicz_mixed_pcapacity(setup, K, phi).value == pytest.approx(
                setup.cp, rel=1e-10)


@crit(8, "inequality audits, 200 instances each")
def test_inequality_audits():
    runs = [("minkowski_q", dict(q=1.0)), ("minkowski_q", dict(q=2.0)),
            ("orlicz_minkowski", {}), ("hat_orlicz_minkowski", {}),
            ("capacitary_orlicz_minkowski", {}), ("hat_capacitary_orlicz_minkowski", {})]
    for i, (kind, kw) in enumerate(runs):
        rows = random_audit(kind, 200, seed=800 + i, **kw)
        assert len(rows) == 200
        bad = [r for r in rows if not r.margin >= -1e-9]
        assert not bad, (kind, kw, bad[:3])


@crit(9, "capacitary Petty body of the ball")
@pytest.mark.parametrize("homogeneous", [False, True])
def test_capacitary_ball(homogeneous):
    setup = ball_capacitary_setup(3, 2, 1, 500)
    rep = solve_capacitary_petty(setup, parse_phi("pow:2"), homogeneous=homogeneous)
    ball = HPolytope(3, setup.body.normals, np.ones(len(setup.body)))
    assert hausdorff_distance(rep.normalized_body, ball) <= 1e-2
    assert abs(rep.objective - 4 * math.pi) <= 1e-2 * 4 * math.pi


@crit(10, "continuity trends")
def test_continuity_trends():
    rng = np.random.default_rng(10)
    mu = random_measure(rng, 2, 9)
    spec = make_spec(Mode.PLAIN_POLAR, mu, parse_phi("pow:2"))
    t0 = time.perf_counter()
    rows = continuity_experiment(spec, [1e-2, 1e-3, 1e-4], seed=7)
    elapsed = time.perf_counter() - t0
    gaps = [r.objective_gap for r in rows[1:]]
    dh = [r.hausdorff for r in rows[1:]]
    assert all(a > b for a, b in zip(gaps, gaps[1:]))
    assert all(a > b for a, b in zip(dh, dh[1:]))
    assert dh[-1] < 1e-3
    assert elapsed < 60.0


@crit(11, "degeneracy trends")
def test_degeneracy_trends():
    eps = [0.5, 0.2, 0.1, 0.05]
    rng = np.random.default_rng(11)
    mu = random_measure(rng, 2, 6)
    inc = parse_phi("pow:1")
    rows = degenerate_family_demo("ii", eps, mu, inc)
    obj = [r.objective for r in rows]
    assert all(a < b for a, b in zip(obj, obj[1:]))
    for r, e in zip(rows, eps):
        assert r.objective >= (1.0 / e) * mu.weights[0]

    # the table is monotone once eps^2 < |u_1| / |u_2| for every atom, so
    # kind (i) uses atoms within 60 degrees of the e1 axis
    ang = np.deg2rad([20.0, -35.0, 55.0, -60.0, 150.0, 205.0, 170.0, 235.0])
    mu = from_arrays(np.column_stack([np.cos(ang), np.sin(ang)]), rng.uniform(0.5, 2.0, 8))
    dec = parse_phi("ipow:1")
    alpha = float(np.abs(mu.directions[:, 0]).min())
    rows = degenerate_family_demo("i", eps, mu, dec)
    obj = [r.objective for r in rows]
    assert all(a > b for a, b in zip(obj, obj[1:]))
    for r, e in zip(rows, eps):
        assert r.objective <= (alpha / e) ** -1.0 * mu.mass


@crit(12, "Luxemburg norm closed form and homogeneity")
def test_luxemburg():
    rng = np.random.default_rng(12)
    for q in (0.5, 1.0, 2.0, 5.0):
        phi = parse_phi(f"pow:{q}")
        for _ in range(20):
            f = rng.uniform(0.1, 5.0, 15)
            w = rng.uniform(0.1, 2.0, 15)
            lam = luxemburg_norm(f, w, phi)[0]
            assert lam == pytest.approx(oracles.luxemburg_power(f, w, q), rel=1e-10)
            assert luxemburg_norm(3.5 * f, w, phi)[0] == pytest.approx(3.5 * lam, rel=1e-10)


@crit(13, "geometry kernel invariants")
def test_geometry_kernel():
    rng = np.random.default_rng(13)
    for n in (2, 3):
        for _ in range(100):
            P = random_polytope(n, int(rng.integers(n + 2, 16)), rng)
            T = tighten(P)
            # rebuild supports from the vertices read off the polar hull
            V = vertices(P)
            rebuilt = (V @ P.normals.T).max(axis=0)
            np.testing.assert_allclose(rebuilt, T.supports, rtol=0, atol=1e-10)
            ref = oracles.hpoly_supports(P.normals, P.supports, P.normals)
            np.testing.assert_allclose(T.supports, ref, rtol=1e-10, atol=1e-12)
            vol = volume(P)
            assert vol == pytest.approx(oracles.hpoly_volume(P.normals, P.supports), rel=1e-10)
            pv = polar_volume(P)
            for c in (0.5, 2.0, 3.7):
                assert polar_volume(scale(P, c)) == pytest.approx(c ** -n * pv, rel=1e-10)
                assert volume(scale(P, c)) == pytest.approx(c ** n * vol, rel=1e-10)
            S = facet_areas(T)
            assert float(T.supports @ S) / n == pytest.approx(vol, rel=1e-10)


EXAMPLES = [
    ("check-measure", ["check-measure", "--measure", "{sq}"]),
    ("solve", ["solve", "--mode", "plain_polar", "--phi", "pow:1", "--measure", "{sq}",
               "--seed", "1"]),
    ("capacitary", ["capacitary", "--ball", "3", "2", "1", "1000", "--phi", "pow:2",
                    "--seed", "1"]),
]


@crit(14, "CLI determinism")
def test_cli_determinism(tmp_path, capsys):
    import json
    sq = tmp_path / "sq.json"
    sq.write_text(json.dumps({"dim": 2, "atoms": [{"u": u, "w": 1.0} for u in
                                                  ([1, 0], [0, 1], [-1, 0], [0, -1])]}))
    for name, argv in EXAMPLES:
        dumps = []
        for run in (1, 2):
            out = tmp_path / f"{name}{run}"
            args = [a.format(sq=sq) for a in argv] + ["--out", str(out)]
            assert cli.main(args) == 0
            stdout = capsys.readouterr().out
            files = {p.name: p.read_bytes() for p in sorted(out.iterdir())}
            dumps.append((stdout, files))
        assert dumps[0] == dumps[1], name
        doc = json.loads(dumps[0][0])
        if name == "check-measure":
            assert doc["verdict"] == "passes"
        elif name == "solve":
            assert doc["objective"] == pytest.approx(4 * math.sqrt(2 / math.pi), abs=1e-6)
        else:
            assert doc["objective"] == pytest.approx(4 * math.pi, rel=1e-2)
