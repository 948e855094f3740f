"""H-polytopes with the origin in the interior.

A body is stored as unit normals ``u_i`` and positive support numbers
``h_i``. Its polar is ``conv{u_i / h_i}``; in dimensions 2 and 3 every
geometric query goes through that hull, and the vertices of the body are
read back from the polar facets (``a.x <= b`` gives the vertex ``a/b``).
Higher dimensions fall back to LP supports and spherical Monte-Carlo
volumes.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from . import errors, hull
from .lp import maximize
from .measures import (DiscreteMeasure, ball_volume, check_directions,
                       make_measure, sphere_area, sphere_grid)

UNIT_TOL = 1e-12
FACET_TOL = 1e-12
MC_NODES = 4000


@dataclass(frozen=True, eq=False)
class HPolytope:
    """``{x : <x, u_i> <= h_i for all i}``.

    Direct construction trusts its inputs; use :func:`make_hpolytope` for
    validated construction.
    """

    dim: int
    normals: np.ndarray
    supports: np.ndarray

    def __len__(self):
        return len(self.supports)

    @functools.cached_property
    def _polar(self):
        return _polar_data(self.normals, self.supports)

    def with_supports(self, supports) -> "HPolytope":
        return HPolytope(self.dim, self.normals, np.asarray(supports, dtype=float))


def make_hpolytope(dim, normals, supports, *, check=True) -> HPolytope:
    normals = np.atleast_2d(np.asarray(normals, dtype=float))
    supports = np.asarray(supports, dtype=float).ravel()
    if normals.shape[1] != dim:
        raise errors.DimensionMismatch("normals do not live in R^dim", dim=dim)
    if len(normals) != len(supports):
        raise errors.DimensionMismatch("normals and supports differ in length",
                                       normals=len(normals), supports=len(supports))
    if not np.all(np.isfinite(supports)) or np.any(supports <= 0):
        raise errors.InvalidSupport("support numbers must be positive and finite")
    norms = np.linalg.norm(normals, axis=1)
    if np.any(norms == 0) or not np.all(np.isfinite(norms)):
        raise errors.InvalidAtom("zero or non-finite normal")
    # a nonunit normal describes the same halfspace after rescaling
    off = np.abs(norms - 1.0) > UNIT_TOL
    if off.any():
        normals = normals / norms[:, None]
        supports = supports / norms
    if check:
        if len(normals) < dim + 1:
            raise errors.UnboundedBody("need at least dim+1 halfspaces")
        ok, wit = check_directions(normals)
        if not ok:
            raise errors.UnboundedBody("normals lie in a closed hemisphere",
                                       witness=[float(x) for x in wit])
    return HPolytope(int(dim), normals, supports)


# ---------------------------------------------------------------------------
# polar hull data

@dataclass
class _PolarData:
    points: np.ndarray      # u_i / h_i
    volume: float           # |P°|
    grad: np.ndarray        # d|P°| / d points
    corners: np.ndarray     # vertices of P, one per polar facet (may repeat)
    cells: np.ndarray       # 2D: hull order; 3D: outward triangles

    def incident(self):
        """Per normal, the indices into ``corners`` spanning its facet."""
        inc = [[] for _ in range(len(self.points))]
        if self.cells.ndim == 1:
            k = len(self.cells)
            for j, i in enumerate(self.cells):
                inc[i] = [(j - 1) % k, j]
        else:
            for t, row in enumerate(self.cells):
                for i in row:
                    inc[i].append(t)
        return inc


def _polar_data(normals, h):
    dim = normals.shape[1]
    pts = normals / h[:, None]
    if dim == 2:
        order = hull.chain2d(pts)
        if len(order) < 3:
            raise errors.DegenerateHull("polar hull is degenerate")
        poly = pts[order]
        nxt = np.roll(poly, -1, axis=0)
        d = nxt - poly
        a = np.column_stack([d[:, 1], -d[:, 0]])
        b = np.einsum("ij,ij->i", a, poly)
        if np.any(b <= 0):
            raise errors.DegenerateHull("origin is not interior to the polar hull")
        corners = a / b[:, None]
        area = hull.shoelace(poly)
        prv = np.roll(poly, 1, axis=0)
        grad = np.zeros_like(pts)
        grad[order] = 0.5 * np.column_stack([nxt[:, 1] - prv[:, 1], prv[:, 0] - nxt[:, 0]])
        return _PolarData(pts, area, grad, corners, order)
    if dim == 3:
        hh = hull.hull3d(pts)
        if np.any(hh.offsets <= 0):
            raise errors.DegenerateHull("origin is not interior to the polar hull")
        corners = hh.normals / hh.offsets[:, None]
        tri = hh.triangles
        A, B, C = pts[tri[:, 0]], pts[tri[:, 1]], pts[tri[:, 2]]
        vol = float(np.einsum("ij,ij->i", A, np.cross(B, C)).sum() / 6.0)
        grad = np.zeros_like(pts)
        np.add.at(grad, tri[:, 0], np.cross(B, C) / 6.0)
        np.add.at(grad, tri[:, 1], np.cross(C, A) / 6.0)
        np.add.at(grad, tri[:, 2], np.cross(A, B) / 6.0)
        return _PolarData(pts, vol, grad, corners, tri)
    raise errors.UnsupportedDimension(f"exact geometry needs dim 2 or 3, got {dim}",
                                      dim=dim)


def _dedupe(points, rel=1e-9):
    if len(points) < 2:
        return points
    scale = max(1.0, float(np.abs(points).max()))
    pairs = cKDTree(points).query_pairs(rel * scale, output_type="ndarray")
    if len(pairs) == 0:
        return points
    drop = np.zeros(len(points), dtype=bool)
    # keep the lowest index of each cluster
    for i, j in sorted(map(tuple, pairs)):
        if not drop[i]:
            drop[j] = True
    return points[~drop]


# ---------------------------------------------------------------------------
# queries

def support_eval(P: HPolytope, u) -> float:
    """``max <x, u>`` over ``P`` by linear programming."""
    return maximize(np.asarray(u, dtype=float), P.normals, P.supports).value


def support_values(P: HPolytope, dirs) -> np.ndarray:
    """Support function at each row of ``dirs``.

    Dimensions 2 and 3 maximize over the vertex list; otherwise one LP per
    direction.
    """
    dirs = np.atleast_2d(np.asarray(dirs, dtype=float))
    if P.dim in (2, 3):
        return (P._polar.corners @ dirs.T).max(axis=0)
    return np.array([support_eval(P, u) for u in dirs])


def tighten(P: HPolytope) -> HPolytope:
    t = support_values(P, P.normals)
    return P.with_supports(np.minimum(t, P.supports))


def polar_vertices(P: HPolytope) -> np.ndarray:
    return P.normals / P.supports[:, None]


def vertices(P: HPolytope) -> np.ndarray:
    if P.dim not in (2, 3):
        raise errors.UnsupportedDimension("vertex enumeration needs dim 2 or 3",
                                          dim=P.dim)
    corners = P._polar.corners
    return corners if P.dim == 2 else _dedupe(corners)


def volume(P: HPolytope) -> float:
    if P.dim in (2, 3):
        return hull.hull_volume(vertices(P))
    # rho_P(u) = 1 / max_i <u, u_i> / h_i
    u, w = _mc_nodes(P.dim)
    rho = 1.0 / (u @ (P.normals / P.supports[:, None]).T).max(axis=1)
    return float(w @ rho ** P.dim) / P.dim


def polar_volume(P: HPolytope) -> float:
    if P.dim in (2, 3):
        return P._polar.volume
    u, w = _mc_nodes(P.dim)
    rho = 1.0 / support_values(P, u)
    return float(w @ rho ** P.dim) / P.dim


@functools.lru_cache(maxsize=8)
def _mc_nodes(dim, n=MC_NODES):
    g = np.random.default_rng(12345).standard_normal((n, dim))
    g /= np.linalg.norm(g, axis=1)[:, None]
    return g, np.full(n, sphere_area(dim) / n)


def polar_volume_gradient(P: HPolytope):
    """``(|P°|, d|P°|/dh)`` in dimensions 2 and 3."""
    pd = P._polar
    g = -np.einsum("ij,ij->i", pd.grad, P.normals) / P.supports ** 2
    return pd.volume, g


def facet_areas(P: HPolytope) -> np.ndarray:
    """Facet (n-1)-measure per normal of ``P`` (0 for non-facets)."""
    pd = P._polar
    out = np.zeros(len(P))
    for i, inc in enumerate(pd.incident()):
        if not inc:
            continue
        pts = pd.corners[inc]
        if P.dim == 2:
            out[i] = float(np.linalg.norm(pts[1] - pts[0]))
        else:
            out[i] = _planar_area(pts, P.normals[i])
    out[out < FACET_TOL] = 0.0
    return out


def _planar_area(pts, n):
    e1 = np.cross(n, [1.0, 0.0, 0.0] if abs(n[0]) < 0.9 else [0.0, 1.0, 0.0])
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(n, e1)
    q = np.column_stack([pts @ e1, pts @ e2])
    if len(q) < 3:
        return 0.0
    ring = hull.chain2d(q)
    return hull.shoelace(q[ring]) if len(ring) >= 3 else 0.0


def surface_area_measure(P: HPolytope) -> DiscreteMeasure:
    """Atoms at facet normals weighted by facet areas."""
    if P.dim not in (2, 3):
        raise errors.UnsupportedDimension("surface area measure needs dim 2 or 3",
                                          dim=P.dim)
    S = facet_areas(P)
    keep = S > 0
    return make_measure(P.dim, zip(P.normals[keep], S[keep]))


def vrad(vol, dim) -> float:
    if not vol > 0:
        raise errors.InvalidParameter("volume must be positive", volume=vol)
    return (vol / ball_volume(dim)) ** (1.0 / dim)


def scale(P: HPolytope, c: float) -> HPolytope:
    if not c > 0:
        raise errors.InvalidParameter("scale factor must be positive", factor=c)
    return P.with_supports(P.supports * c)


def linear_image(P: HPolytope, T) -> HPolytope:
    T = np.asarray(T, dtype=float)
    if T.shape != (P.dim, P.dim):
        raise errors.DimensionMismatch("matrix shape does not match dimension",
                                       shape=list(T.shape))
    if abs(np.linalg.det(T)) <= 1e-14:
        raise errors.SingularMap("linear map is singular")
    N = np.linalg.solve(T, P.normals.T).T  # rows T^{-t} u_i
    r = np.linalg.norm(N, axis=1)
    return HPolytope(P.dim, N / r[:, None], P.supports / r)


def ball_hpolytope(dim, r, resolution) -> HPolytope:
    if not r > 0:
        raise errors.InvalidParameter("radius must be positive", r=r)
    dirs, _ = sphere_grid(dim, resolution)
    return HPolytope(int(dim), dirs, np.full(len(dirs), float(r)))


def default_grid(dim):
    if dim == 2:
        return sphere_grid(2, 720)[0]
    if dim == 3:
        return sphere_grid(3, 2000)[0]
    return _mc_nodes(dim)[0]


def hausdorff_distance(P: HPolytope, Q: HPolytope, grid=None) -> float:
    """Largest support gap over ``grid`` plus both bodies' normals.

    This samples the true distance from below.
    """
    if P.dim != Q.dim:
        raise errors.DimensionMismatch("bodies live in different dimensions")
    if grid is None:
        grid = default_grid(P.dim)
    elif np.isscalar(grid):
        grid = sphere_grid(P.dim, int(grid))[0]
    dirs = np.vstack([np.atleast_2d(grid), P.normals, Q.normals])
    return float(np.abs(support_values(P, dirs) - support_values(Q, dirs)).max())


def is_tight(P: HPolytope, tol=1e-10) -> bool:
    return bool(np.all(P.supports - support_values(P, P.normals)
                       <= tol * max(1.0, float(P.supports.max()))))



def random_polytope(dim, m, rng, spread=0.4) -> HPolytope:
    """Random body with ``m`` Gaussian normals and log-normal supports.

    Normal sets that fail the hemisphere test are redrawn.
    """
    if m < dim + 1:
        raise errors.InvalidParameter("need at least dim+1 normals", m=m)
    while True:
        U = rng.standard_normal((m, dim))
        U /= np.linalg.norm(U, axis=1)[:, None]
        if check_directions(U)[0]:
            break
    return HPolytope(int(dim), U, np.exp(spread * rng.standard_normal(m)))
