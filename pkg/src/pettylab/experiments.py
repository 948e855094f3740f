"""Continuity and degeneracy experiments.

``continuity_experiment`` perturbs the weights of the input measure and
tracks how far the optimal value and the optimal body move.
``degenerate_family_demo`` evaluates the objective along explicit families
of ellipsoid-like polytopes on which the extremal problems run off to 0 or
infinity, so no optimizer is involved.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import errors
from .bodies import (ball_hpolytope, hausdorff_distance, linear_image, polar_volume,
                     random_polytope, scale, support_values, vrad)
from .functionals import (AUDIT_KINDS, AuditRow, ball_capacitary_setup, inequality_audit,
                          scale_setup)
from .measures import DiscreteMeasure, ball_volume, perturb_measure, sphere_grid
from .orlicz import OrliczFunction, parse_phi
from .solver import CAPACITARY, ObjectiveSpec, SolveConfig, make_spec, solve

EPS_GUARD = 1e-6


@dataclass(frozen=True)
class ContinuityRow:
    delta: float
    objective: float
    objective_gap: float
    hausdorff: float


def _perturbed_spec(base: ObjectiveSpec, delta, seed):
    mu = perturb_measure(base.measure, delta, seed)
    cp = base.cp
    if base.mode in CAPACITARY:
        # the capacity follows the perturbed capacitary measure
        factor = (base.p - 1.0) / (base.dim - base.p)
        cp = factor * float(base.denominators @ mu.weights)
    return make_spec(base.mode, mu, base.phi, denominators=base.denominators,
                     weights_scale=base.weights_scale, p=base.p, cp=cp)


def continuity_experiment(base: ObjectiveSpec, deltas, seed=0, config=None,
                          grid_size=720):
    """Rows ``(delta, objective, |obj_delta - obj_0|, d_H(M_delta, M_0))``.

    A ``delta = 0`` reference solve is always run first; it is reported as
    the first row.
    """
    if not base.phi.convex:
        raise errors.InvalidParameter("continuity experiment needs a convex phi")
    cfg = config or SolveConfig()
    grid = sphere_grid(base.dim, grid_size)[0]
    ref = solve(base, cfg)
    rows = [ContinuityRow(0.0, ref.objective, 0.0, 0.0)]
    for d in deltas:
        d = float(d)
        if d == 0.0:
            continue
        rep = solve(_perturbed_spec(base, d, seed), cfg)
        rows.append(ContinuityRow(
            d, rep.objective, abs(rep.objective - ref.objective),
            hausdorff_distance(rep.normalized_body, ref.normalized_body, grid)))
    return rows


@dataclass(frozen=True)
class DegenerateRow:
    eps: float
    objective: float
    bound: float
    polar_volume_error: float


def _frame(u):
    """Orthogonal matrix whose first column is ``u``."""
    n = len(u)
    Q, _ = np.linalg.qr(np.column_stack([u, np.eye(n)]))
    return Q * np.sign(Q[:, 0] @ u)


def degenerate_family_demo(kind: str, eps_list, measure: DiscreteMeasure,
                           phi: OrliczFunction, denominators=None, resolution=None):
    """Objective ``sum w_i d_i phi(h_L(u_i) / d_i)`` along a degenerate family.

    kind ``"i"``: ``L = eps^-1 diag(1, .., 1, eps^n) B`` for phi in class D,
    which drives the objective to 0; the bound is ``phi(alpha/eps) * mass``
    with ``alpha`` the smallest absolute first coordinate of the atoms
    (``sum w_i d_i phi(alpha / (eps d_i))`` when denominators are given).

    kind ``"ii"``: ``L = Q diag(1/eps, eps, 1, ..) Q^t B`` with ``Q e1 = u_1``,
    so ``h_L(u_1) = 1/eps`` and the objective blows up for phi in class I.
    For phi in class D the two stretch factors swap (``h_L(u_1) = eps``).
    The bound is ``w_1 d_1 phi(h_L(u_1) / d_1)``.

    Every ``L`` is a polytope approximation of the ellipsoid (the unit ball
    grid pushed through the map), rescaled so that ``|L°| = omega_n``.
    """
    kind = str(kind).lower().strip("()")
    if kind not in ("i", "ii"):
        raise errors.InvalidParameter("kind must be 'i' or 'ii'", kind=kind)
    eps = np.asarray(list(eps_list), dtype=float)
    if eps.size == 0 or np.any(eps <= 0) or np.any(eps >= 1):
        raise errors.InvalidParameter("epsilons must lie in (0, 1)")
    if np.any(np.diff(eps) >= 0):
        raise errors.InvalidParameter("epsilons must be strictly decreasing")
    if eps.min() < EPS_GUARD:
        raise errors.ConditioningGuard(f"epsilon below {EPS_GUARD:g}", eps=float(eps.min()))
    n = measure.dim
    U, w = measure.directions, measure.weights
    d = np.ones(len(w)) if denominators is None else np.asarray(denominators, float)
    if kind == "i":
        if phi.class_tag != "D":
            raise errors.InvalidParameter("kind (i) needs phi in class D")
        alpha = float(np.abs(U[:, 0]).min())
        if alpha == 0.0:
            raise errors.InvalidParameter("kind (i) needs nonzero first coordinates")
    if resolution is None:
        resolution = 720 if n == 2 else 2000
    ball = ball_hpolytope(n, 1.0, resolution)
    Q = _frame(U[0])
    omega = ball_volume(n)
    rows = []
    for e in eps:
        if kind == "i":
            T = np.eye(n) / e
            T[-1, -1] = e ** (n - 1)
        else:
            diag = np.ones(n)
            big, small = (1.0 / e, e) if phi.class_tag == "I" else (e, 1.0 / e)
            diag[0], diag[1] = big, small
            T = Q @ np.diag(diag) @ Q.T
        L = linear_image(ball, T)
        L = scale(L, vrad(polar_volume(L), n))
        h = support_values(L, U)
        obj = float(np.sum(w * d * phi(h / d)))
        if kind == "i":
            bound = float(np.sum(w * d * phi(alpha / (e * d))))
        else:
            target = 1.0 / e if phi.class_tag == "I" else e
            bound = float(w[0] * d[0] * phi(target / d[0]))
        rows.append(DegenerateRow(float(e), obj, bound,
                                  abs(polar_volume(L) - omega) / omega))
    return rows



CONVEX_PHIS = ("pow:1", "pow:2", "expn")
_BALL_RES = {2: 96, 3: 300}


def random_audit(kind: str, count: int, seed=0, phi=None, q=None, dims=(2, 3)):
    """Audit ``count`` seeded random instances of one inequality.

    Bodies have 6 to 14 random facets. When ``phi`` is None the convex
    catalog is cycled; ``q`` defaults to alternating 1 and 2. Capacitary
    kinds use ball setups with random radius and exponent, against either
    a second ball setup (exact capacity) or a random polytope.
    """
    if kind not in AUDIT_KINDS:
        raise errors.InvalidParameter(f"unknown audit kind {kind!r}", kind=kind)
    rng = np.random.default_rng(seed)
    rows: list[AuditRow] = []
    for k in range(int(count)):
        n = int(dims[k % len(dims)])
        f = parse_phi(phi) if isinstance(phi, str) else (
            phi or parse_phi(CONVEX_PHIS[k % len(CONVEX_PHIS)]))
        if kind in ("minkowski_q", "orlicz_minkowski", "hat_orlicz_minkowski"):
            K = random_polytope(n, int(rng.integers(6, 15)), rng)
            L = random_polytope(n, int(rng.integers(6, 15)), rng)
            qq = float(q) if q is not None else float(1 + k % 2)
            rows.append(inequality_audit(kind, K=K, L=L, phi=f, q=qq))
            continue
        p = float(rng.uniform(1.2, n - 0.2))
        setup = scale_setup(ball_capacitary_setup(n, p, 1.0, _BALL_RES[n]),
                            float(rng.uniform(0.5, 2.0)))
        if kind == "isocapacitary":
            rows.append(inequality_audit(kind, setup=setup))
            continue
        if k % 2:
            other = scale_setup(setup, float(rng.uniform(0.3, 3.0)))
        else:
            other = random_polytope(n, int(rng.integers(6, 15)), rng)
        rows.append(inequality_audit(kind, setup=setup, L=other, phi=f))
    return rows
