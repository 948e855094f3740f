"""Polar-normalized Orlicz minimization over H-polytopes.

Candidates are polytopes ``P(h)`` whose facet normals are the atoms of the
input measure. The normalization ``|L°| = omega_n`` is folded into the
objective: evaluating at ``s(h) * h`` with ``s = vrad(P(h)°)`` makes every
objective constant along rays ``c * h``.

In ``y = log h`` the polar-volume constraint is convex but only piecewise
smooth: ``|P(h)°|`` is the largest volume among the star polytopes through
the polar points, one smooth piece per triangulation (see ``_Piece``).
Optima regularly sit on a kink, with a polar point lying on a face of the
hull of the others, which is where plain quasi-Newton iterations stall.
The solver therefore runs constraint generation over pieces (SLSQP) for
moderate atom counts and a BFGS descent on the exact hull otherwise; in
3D the descent comes first and the piecewise solve only resolves stalls.
"""
from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import null_space
from scipy.optimize import minimize, nnls

from . import errors, hull
from .bodies import HPolytope, _polar_data, facet_areas, polar_volume
from .measures import DiscreteMeasure, ball_volume, require_hemisphere
from .orlicz import OrliczFunction, luxemburg_norm


class Mode(str, enum.Enum):
    PLAIN_POLAR = "plain_polar"
    ORLICZ_NORM = "orlicz_norm"
    CAPACITARY_NONHOM = "capacitary_nonhom"
    CAPACITARY_HOM = "capacitary_hom"
    VARIATIONAL = "variational"
    VOLUME_NORMALIZED = "volume_normalized"


CAPACITARY = (Mode.CAPACITARY_NONHOM, Mode.CAPACITARY_HOM)


@dataclass(frozen=True, eq=False)
class ObjectiveSpec:
    mode: Mode
    measure: DiscreteMeasure
    phi: OrliczFunction
    denominators: np.ndarray | None = None
    weights_scale: np.ndarray | None = None
    p: float | None = None
    cp: float | None = None

    @property
    def dim(self):
        return self.measure.dim

    @property
    def weights(self):
        w = self.measure.weights
        return w if self.weights_scale is None else w * self.weights_scale

    @property
    def denoms(self):
        d = self.denominators
        return np.ones(len(self.measure)) if d is None else d


def make_spec(mode, measure, phi, *, denominators=None, weights_scale=None,
              p=None, cp=None) -> ObjectiveSpec:
    mode = Mode(mode)
    measure = require_hemisphere(measure)
    m, n = len(measure), measure.dim
    arrs = {}
    for name, arr in (("denominators", denominators), ("weights_scale", weights_scale)):
        if arr is not None:
            arr = np.asarray(arr, dtype=float)
            if arr.shape != (m,):
                raise errors.DimensionMismatch(f"{name} must have one entry per atom",
                                               expected=m, got=len(arr))
            if not np.all(arr > 0):
                raise errors.InvalidParameter(f"{name} must be positive")
        arrs[name] = arr
    if mode in CAPACITARY:
        if p is None or not (1.0 < p < n):
            raise errors.InvalidExponent(f"p must lie in (1, {n})", p=p)
        if cp is None or not cp > 0:
            raise errors.InvalidParameter("capacity must be positive", cp=cp)
        if arrs["denominators"] is None:
            raise errors.InvalidParameter("capacitary modes need h_K at the atoms")
    return ObjectiveSpec(mode, measure, phi, arrs["denominators"], arrs["weights_scale"],
                         None if p is None else float(p), None if cp is None else float(cp))


# ---------------------------------------------------------------------------
# mode functionals of the normalized support values g

def _functional(spec: ObjectiveSpec, g, with_grad=False):
    phi, w, d = spec.phi, spec.weights, spec.denoms
    mode = spec.mode
    if mode is Mode.PLAIN_POLAR:
        val = float(w @ phi(g))
        return (val, w * phi.derivative(g)) if with_grad else val
    if mode in (Mode.VARIATIONAL, Mode.VOLUME_NORMALIZED, Mode.CAPACITARY_NONHOM):
        c = 1.0
        if mode is Mode.CAPACITARY_NONHOM:
            c = (spec.p - 1.0) / (spec.dim - spec.p)
        val = c * float(np.sum(w * d * phi(g / d)))
        return (val, c * w * phi.derivative(g / d)) if with_grad else val
    if mode is Mode.ORLICZ_NORM:
        lam, _, _ = luxemburg_norm(g, w, phi)
        if not with_grad:
            return lam
        dphi = w * phi.derivative(g / lam)
        return lam, dphi * lam / float(dphi @ g)
    if mode is Mode.CAPACITARY_HOM:
        c = (spec.p - 1.0) / (spec.dim - spec.p)
        w_star = c * d * w / spec.cp
        f = spec.cp * g / d
        eta, _, _ = luxemburg_norm(f, w_star, phi)
        if not with_grad:
            return eta
        dphi = w_star * phi.derivative(f / eta)
        return eta, (spec.cp / d) * dphi * eta / float(dphi @ f)
    raise errors.InvalidParameter(f"unknown mode {mode}")


def _gauge(spec, normals, h, pd=None):
    """Normalizing factor ``s`` and its gradient for the body P(h)."""
    n = spec.dim
    if pd is None:
        pd = _polar_data(normals, h)
    if spec.mode is Mode.VOLUME_NORMALIZED:
        P = HPolytope(n, normals, h)
        P.__dict__["_polar"] = pd
        S = facet_areas(P)
        vol = float(h @ S) / n
        s = (vol / ball_volume(n)) ** (-1.0 / n)
        return s, -s / (n * vol) * S
    vol = pd.volume
    s = (vol / ball_volume(n)) ** (1.0 / n)
    dvol = -np.einsum("ij,ij->i", pd.grad, normals) / h ** 2
    return s, s / (n * vol) * dvol


def objective_eval(spec: ObjectiveSpec, h) -> float:
    """Objective at the body ``P(h)``, normalized, using tightened supports."""
    h = np.asarray(h, dtype=float)
    if h.shape != (len(spec.measure),) or not np.all(h > 0):
        raise errors.InvalidSupport("supports must be positive, one per atom")
    normals = spec.measure.directions
    pd = _polar_data(normals, h)
    t = np.minimum((pd.corners @ normals.T).max(axis=0), h)
    s = normalizing_factor(spec, t)
    return _functional(spec, s * t)


def normalizing_factor(spec: ObjectiveSpec, h) -> float:
    n = spec.dim
    P = HPolytope(n, spec.measure.directions, np.asarray(h, dtype=float))
    if spec.mode is Mode.VOLUME_NORMALIZED:
        vol = float(P.supports @ facet_areas(P)) / n
        return (vol / ball_volume(n)) ** (-1.0 / n)
    return (polar_volume(P) / ball_volume(n)) ** (1.0 / n)


def raw_objective(spec: ObjectiveSpec, h, with_grad=False):
    """Objective at ``s(h) * h`` without tightening, and its gradient in ``h``."""
    h = np.asarray(h, dtype=float)
    s, ds = _gauge(spec, spec.measure.directions, h)
    if not with_grad:
        return _functional(spec, s * h)
    val, dG = _functional(spec, s * h, with_grad=True)
    return val, s * dG + float(dG @ h) * ds


# ---------------------------------------------------------------------------
# star pieces of the polar volume
#
# For a fixed star triangulation of the sphere by atom directions, the
# polytope with vertices u_a / h_a has volume sum_c coef_c / prod_{a in c} h_a.
# It lies inside conv{u_i / h_i}, with equality when the cells triangulate the
# boundary of that hull, so |P(h)°| is the largest piece volume. In the
# variables y = log h every piece gives a log-sum-exp constraint, which is
# convex; the kinks of the polar volume are where two pieces tie.

@dataclass(frozen=True, eq=False)
class _Piece:
    cells: np.ndarray   # (k, n) atom indices, positively oriented
    coef: np.ndarray    # det(u_c) / n!

    @property
    def key(self):
        return frozenset(tuple(sorted(c)) for c in self.cells.tolist())

    def log_volume(self, y):
        e = self.coef * np.exp(-y[self.cells].sum(axis=1))
        vol = float(e.sum())
        k = self.cells.shape[1]
        grad = -np.bincount(self.cells.ravel(), np.repeat(e, k), len(y)) / vol
        return np.log(vol), grad


def _piece(U, cells):
    n = U.shape[1]
    coef = np.linalg.det(U[cells]) / math.factorial(n)
    if np.any(coef <= 0):
        raise errors.DegenerateHull("star cell through the origin or misoriented")
    return _Piece(np.asarray(cells, dtype=int), coef)


def _star_piece(U):
    """Piece using every atom, from the hull of the unit directions."""
    m, n = U.shape
    if n == 2:
        order = np.argsort(np.arctan2(U[:, 1], U[:, 0]), kind="stable")
        return _piece(U, np.column_stack([order, np.roll(order, -1)]))
    if n == 3:
        tri = hull.hull3d(U).triangles
        if len(np.unique(tri)) < m:
            raise errors.DegenerateHull("an atom direction is not extreme")
        return _piece(U, tri)
    raise errors.UnsupportedDimension(f"the solver needs dim 2 or 3, got {n}", dim=n)


def _hull_piece(U, pd):
    c = pd.cells
    if c.ndim == 1:
        c = np.column_stack([c, np.roll(c, -1)])
    return _piece(U, c)


def _log_omega(spec):
    return math.log(ball_volume(spec.dim))


def _ray_fun(spec, piece, y):
    """Objective at ``s * h`` with the scale ``s`` taken from one piece."""
    n = spec.dim
    lv, dlv = piece.log_volume(y)
    g = np.exp(y + (lv - _log_omega(spec)) / n)
    val, dG = _functional(spec, g, with_grad=True)
    dg = dG * g
    return val, dg + dg.sum() / n * dlv, dg


def _raw_fun(spec, y):
    h = np.exp(y)
    s, ds = _gauge(spec, spec.measure.directions, h)
    val, dG = _functional(spec, s * h, with_grad=True)
    dg = dG * s * h
    return val, dg + float(dG @ h) * ds * h, dg


def _bfgs(fun, y, cfg, restarts=3):
    """BFGS on a scale-invariant objective; returns (y, residual, iterations).

    The residual is the gradient relative to the size of its direct part.
    A stalled line search is retried from the last iterate with a fresh
    Hessian approximation.
    """
    # scaled so that the stopping test matches the reported residual
    f0 = float(np.abs(fun(y)[2]).max()) or 1.0

    def fg(z):
        v, g, _ = fun(z)
        return v / f0, g / f0

    method = "BFGS" if len(y) <= 200 else "L-BFGS-B"
    opts = {"maxiter": cfg.max_iters, "gtol": 0.1 * cfg.grad_tol}
    if method == "L-BFGS-B":
        opts["ftol"] = 0.0
    iters = 0
    for _ in range(restarts):
        res = minimize(fg, y, jac=True, method=method, options=opts)
        y, iters = res.x, iters + int(res.nit)
        _, g, dg = fun(y)
        resid = float(np.abs(g).max() / np.abs(dg).max())
        if resid <= cfg.grad_tol:
            break
    if resid > 0.1 * cfg.grad_tol:
        y, resid, it = _polish(fun, y, cfg)
        iters += it
    return y, resid, iters


def _probe(fun, y):
    try:
        return fun(y)[1]
    except errors.PettyError:
        return None


def _polish(fun, y, cfg, steps=60, memory=10):
    """L-BFGS driven by gradients only.

    Close to the optimum the objective changes by less than its rounding
    error, so value-based line searches give up early; the step length
    here comes from a secant on the directional derivative instead.
    """
    def resid_of(g, dg):
        return float(np.abs(g).max() / np.abs(dg).max())

    _, g, dg = fun(y)
    best = (resid_of(g, dg), y)
    S, Y = [], []
    it = 0
    for it in range(1, min(steps, cfg.max_iters) + 1):
        q = g.copy()
        alphas = []
        for s, yv in reversed(list(zip(S, Y))):
            a = (s @ q) / (yv @ s)
            alphas.append(a)
            q -= a * yv
        if S:
            q *= (S[-1] @ Y[-1]) / (Y[-1] @ Y[-1])
        for (s, yv), a in zip(zip(S, Y), reversed(alphas)):
            q += (a - (yv @ q) / (yv @ s)) * s
        d = -q
        slope0 = g @ d
        if slope0 >= 0:
            d, slope0 = -g, -(g @ g)
            S.clear(), Y.clear()
        # bracket the sign change of the directional derivative, then secant;
        # a trial that breaks the hull counts as overshoot and is halved
        a_lo, s_lo, a_hi = 0.0, slope0, 1.0
        g_hi = _probe(fun, y + d)
        while g_hi is None and a_hi > 1e-12:
            a_hi *= 0.5
            g_hi = _probe(fun, y + a_hi * d)
        if g_hi is None:
            break
        s_hi = g_hi @ d
        for _ in range(8):
            if s_hi > 0:
                break
            g_next = _probe(fun, y + 2.0 * a_hi * d)
            if g_next is None:
                break
            a_lo, s_lo, a_hi = a_hi, s_hi, 2.0 * a_hi
            g_hi, s_hi = g_next, g_next @ d
        a = a_hi
        for _ in range(4):
            if s_hi <= 0 or abs(s_hi - s_lo) == 0:
                break
            a = a_lo - s_lo * (a_hi - a_lo) / (s_hi - s_lo)
            ga = _probe(fun, y + a * d)
            if ga is None:
                a = a_lo if a_lo > 0 else a_hi
                break
            sa = ga @ d
            if abs(sa) <= 0.1 * abs(slope0):
                break
            if sa < 0:
                a_lo, s_lo = a, sa
            else:
                a_hi, s_hi = a, sa
        y_new = y + a * d
        try:
            _, g_new, dg = fun(y_new)
        except errors.PettyError:
            break
        s, yv = y_new - y, g_new - g
        if s @ yv > 1e-300:
            S.append(s)
            Y.append(yv)
            if len(S) > memory:
                S.pop(0), Y.pop(0)
        y, g = y_new, g_new
        r = resid_of(g, dg)
        if r < best[0]:
            best = (r, y)
        if r <= 0.1 * cfg.grad_tol:
            break
    return best[1], best[0], it


def _hull_descent(spec, cfg, y, kicks=4):
    """BFGS with the exact polar volume.

    Iterates can stall where a polar point sits on a face of the hull of
    the others; such atoms get a small facet and the descent is resumed.
    """
    U = spec.measure.directions
    fun = (lambda z: _raw_fun(spec, z))
    iters = 0
    for _ in range(kicks):
        y, resid, it = _bfgs(fun, y, cfg)
        iters += it
        if resid <= cfg.grad_tol or spec.mode is Mode.VOLUME_NORMALIZED:
            break
        h = np.exp(y)
        S = facet_areas(HPolytope(spec.dim, U, h))
        stuck = S <= 1e-6 * np.median(S[S > 0])
        if not stuck.any():
            break
        t = np.minimum((_polar_data(U, h).corners @ U[stuck].T).max(axis=0), h[stuck])
        y = y.copy()
        y[stuck] = np.log(t) + math.log1p(-1e-3)
    return y, resid, iters


def _slsqp(spec, pieces, y, cfg):
    """Constrained solve over several pieces; returns (y, iterations)."""
    lw = _log_omega(spec)
    y = y + (max(P.log_volume(y)[0] for P in pieces) - lw) / spec.dim
    f0 = abs(_functional(spec, np.exp(y))) or 1.0

    def fg(z):
        h = np.exp(z)
        v, dG = _functional(spec, h, with_grad=True)
        return v / f0, dG * h / f0

    cons = [{"type": "ineq",
             "fun": lambda z, P=P: lw - P.log_volume(z)[0],
             "jac": lambda z, P=P: -P.log_volume(z)[1]} for P in pieces]
    res = minimize(fg, y, jac=True, method="SLSQP", constraints=cons,
                   options={"maxiter": cfg.max_iters, "ftol": 1e-16})
    return res.x, int(res.nit)


def _kkt_residual(spec, pieces, y):
    """Relative residual of the multiplier rule at the active pieces."""
    lw = _log_omega(spec)
    h = np.exp(y)
    _, dG = _functional(spec, h, with_grad=True)
    gf = dG * h
    rows = [P.log_volume(y) for P in pieces]
    top = max(lv for lv, _ in rows)
    A = np.column_stack([-d for lv, d in rows if lv >= top - 1e-9])
    _, r = nnls(A, gf)
    return float(r / np.linalg.norm(gf))


def _nelder_mead(spec, cfg, y):
    B = _basis(len(y))
    f0 = objective_eval(spec, np.exp(y))
    res = minimize(lambda z: objective_eval(spec, np.exp(y + B @ z)) / f0,
                   np.zeros(B.shape[1]), method="Nelder-Mead",
                   options={"maxfev": cfg.max_iters, "xatol": 1e-6,
                            "fatol": cfg.tol, "adaptive": True})
    return y + B @ res.x, int(res.nit)


MAX_ROUNDS = 200
PIECEWISE_MAX = {2: 200, 3: 60}   # atom counts for the piecewise solve


def _piecewise(spec, cfg, y, first=None):
    """Constraint generation over pieces; returns (y, residual, iterations).

    Starts from the star piece through every atom (plus ``first`` if
    given). Whenever the relaxed optimum folds a polar vertex inward, the
    piece of the actual hull there is added.
    """
    U = spec.measure.directions
    lw = _log_omega(spec)
    star = _star_piece(U)
    pieces = {star.key: star}
    if first is not None:
        pieces.setdefault(first.key, first)
    iters = 0
    for _ in range(MAX_ROUNDS):
        plist = list(pieces.values())
        if len(plist) == 1:
            y, _, it = _bfgs(lambda z: _ray_fun(spec, star, z), y, cfg)
        else:
            y, it = _slsqp(spec, plist, y, cfg)
        iters += it
        y = y + (max(P.log_volume(y)[0] for P in plist) - lw) / spec.dim
        pd = _polar_data(U, np.exp(y))
        if math.log(pd.volume) <= lw + 1e-11:
            break
        new = _hull_piece(U, pd)
        if new.key in pieces:
            break
        pieces[new.key] = new
    return y, _kkt_residual(spec, list(pieces.values()), y), iters


def _run_start(spec, cfg, k, x0):
    U = spec.measure.directions
    y = x0 - x0.mean()
    iters = 0
    if cfg.nelder_mead:
        y, iters = _nelder_mead(spec, cfg, y)
    if spec.dim == 2 and spec.mode is not Mode.VOLUME_NORMALIZED and len(y) <= PIECEWISE_MAX[2]:
        y, resid, it = _piecewise(spec, cfg, y)
        iters += it
    else:
        # |P(h)| is C^1 in h, so volume mode has no kinks; polar modes may
        # stall on one, which the piecewise solve then resolves
        y, resid, it = _hull_descent(spec, cfg, y)
        iters += it
        if (resid > cfg.grad_tol and spec.mode is not Mode.VOLUME_NORMALIZED
                and len(y) <= PIECEWISE_MAX[spec.dim]):
            first = _hull_piece(U, _polar_data(U, np.exp(y)))
            y, resid, it = _piecewise(spec, cfg, y, first)
            iters += it
    h = np.exp(y)
    pd = _polar_data(U, h)
    t = np.minimum((pd.corners @ U.T).max(axis=0), h)
    s = normalizing_factor(spec, t)
    return StartResult(k, h, _functional(spec, s * t), s * t, resid, iters)


# ---------------------------------------------------------------------------
# driver

@dataclass
class SolveConfig:
    starts: int = 8
    seed: int = 0
    max_iters: int = 2000
    tol: float = 1e-10          # relative objective tolerance (ties, NM)
    grad_tol: float = 1e-7      # relative gradient (or multiplier-rule) residual
    agree_tol: float = 1e-5     # cross-start agreement of normalized supports
    spread: float = 0.3         # log-normal start spread
    nelder_mead: bool = False   # derivative-free pre-phase on the tight objective
    threads: int | None = None


@dataclass
class StartResult:
    index: int
    h: np.ndarray
    objective: float
    normalized: np.ndarray
    residual: float
    iterations: int


@dataclass
class SolveReport:
    mode: str
    optimal_supports: np.ndarray
    normalized_body: HPolytope
    objective: float
    starts_used: int
    per_start_objectives: list
    max_gradient_residual: float
    facet_activity: np.ndarray
    iterations: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    distinct_optima: list = field(default_factory=list)
    start_supports: list = field(default_factory=list)   # normalized, per start

    def to_dict(self):
        return {
            "mode": self.mode,
            "objective": self.objective,
            "optimal_supports": self.optimal_supports.tolist(),
            "normalized_supports": self.normalized_body.supports.tolist(),
            "normals": self.normalized_body.normals.tolist(),
            "starts_used": self.starts_used,
            "per_start_objectives": list(self.per_start_objectives),
            "max_gradient_residual": self.max_gradient_residual,
            "facet_activity": self.facet_activity.tolist(),
            "max_facet_activity": float(self.facet_activity.max()),
            "iterations": list(self.iterations),
            "warnings": list(self.warnings),
            "distinct_optima": [list(map(float, x)) for x in self.distinct_optima],
        }


def _basis(m):
    return null_space(np.ones((1, m)))


def _thread_count(cfg, starts):
    n = cfg.threads
    if n is None:
        env = os.environ.get("PETTYLAB_THREADS", "")
        n = int(env) if env.strip().isdigit() else 1
    return max(1, min(int(n), starts))


def solve(spec: ObjectiveSpec, config: SolveConfig | None = None) -> SolveReport:
    cfg = config or SolveConfig()
    if spec.phi.class_tag != "I":
        raise errors.InvalidParameter(
            "only phi in class I gives an attained infimum; use the degenerate "
            "family demo for the other cases")
    if cfg.starts < 1:
        raise errors.InvalidParameter("need at least one start", starts=cfg.starts)
    m = len(spec.measure)
    rng = np.random.default_rng(cfg.seed)
    x0s = [np.zeros(m)] + [cfg.spread * rng.standard_normal(m) for _ in range(cfg.starts - 1)]
    nthreads = _thread_count(cfg, cfg.starts)
    if nthreads > 1:
        with ThreadPoolExecutor(nthreads) as ex:
            results = list(ex.map(lambda a: _run_start(spec, cfg, *a), enumerate(x0s)))
    else:
        results = [_run_start(spec, cfg, k, x0) for k, x0 in enumerate(x0s)]
    results.sort(key=lambda r: r.index)

    best_val = min(r.objective for r in results)
    tied = [r for r in results if r.objective <= best_val + cfg.tol * abs(best_val)]
    best = min(tied, key=lambda r: tuple(r.normalized))

    warnings = []
    clusters = []
    for r in results:
        for c in clusters:
            if np.abs(c[0].normalized - r.normalized).max() <= cfg.agree_tol:
                c.append(r)
                break
        else:
            clusters.append([r])
    distinct = []
    if len(clusters) > 1:
        spread = max(np.abs(a.normalized - b.normalized).max()
                     for a in results for b in results)
        if spec.phi.convex:
            warnings.append(f"starts disagree by {spread:.3e} in normalized supports "
                            "although phi is convex (possible nonuniqueness or "
                            "incomplete convergence)")
        distinct = [min(c, key=lambda r: r.objective).normalized for c in clusters]
    if best.residual > cfg.grad_tol:
        raise errors.NoConvergence(
            f"gradient residual {best.residual:.3e} above {cfg.grad_tol:.1e}",
            best=best, residual=best.residual)

    body = HPolytope(spec.dim, spec.measure.directions, best.normalized)
    pd = _polar_data(spec.measure.directions, best.h)
    t = (pd.corners @ spec.measure.directions.T).max(axis=0)
    return SolveReport(
        mode=spec.mode.value,
        optimal_supports=best.h,
        normalized_body=body,
        objective=objective_eval(spec, best.h),
        starts_used=len(results),
        per_start_objectives=[r.objective for r in results],
        max_gradient_residual=max(r.residual for r in results),
        facet_activity=np.maximum(best.h - t, 0.0),
        iterations=[r.iterations for r in results],
        warnings=warnings,
        distinct_optima=distinct,
        start_supports=[r.normalized for r in results],
    )


# ---------------------------------------------------------------------------
# wrappers

def solve_polar_orlicz(mu, phi, config=None) -> SolveReport:
    return solve(make_spec(Mode.PLAIN_POLAR, mu, phi), config)


def solve_orlicz_norm(mu, phi, config=None) -> SolveReport:
    return solve(make_spec(Mode.ORLICZ_NORM, mu, phi), config)


def capacitary_spec(setup, phi, homogeneous=False) -> ObjectiveSpec:
    mode = Mode.CAPACITARY_HOM if homogeneous else Mode.CAPACITARY_NONHOM
    return make_spec(mode, setup.mu_p, phi, denominators=setup.h_atoms,
                     p=setup.p, cp=setup.cp)


def solve_capacitary_petty(setup, phi, homogeneous=False, config=None) -> SolveReport:
    """Minimize the (homogeneous) Orlicz mixed p-capacity against ``setup``.

    Candidates have facet normals on the support of the capacitary measure.
    """
    return solve(capacitary_spec(setup, phi, homogeneous), config)


def solve_variational(measure, phi, denominators=None, config=None) -> SolveReport:
    return solve(make_spec(Mode.VARIATIONAL, measure, phi, denominators=denominators),
                 config)


def solve_volume_normalized(measure, phi, denominators=None, config=None) -> SolveReport:
    return solve(make_spec(Mode.VOLUME_NORMALIZED, measure, phi,
                           denominators=denominators), config)
