"""Finite atomic measures on the unit sphere.

A :class:`DiscreteMeasure` stores unit directions and positive weights as
read-only arrays. Construction normalizes directions and merges
near-coincident atoms; the hemisphere test is run on demand and cached in
a checked copy of the measure.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.spatial import cKDTree

from . import errors
from .hull import hull3d
from .lp import maximize

MERGE_TOL = 1e-12
UNIT_TOL = 1e-12
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class Hemisphere(str, enum.Enum):
    PASSES = "passes"
    FAILS = "fails"
    UNCHECKED = "unchecked"


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """Weighted atoms ``sum_i w_i delta_{u_i}`` on the sphere in R^dim."""

    dim: int
    directions: np.ndarray
    weights: np.ndarray
    hemisphere: Hemisphere = Hemisphere.UNCHECKED
    witness: np.ndarray | None = None

    def __len__(self):
        return len(self.weights)

    @property
    def mass(self) -> float:
        return float(self.weights.sum())

    @property
    def atoms(self):
        return list(zip(self.directions, self.weights))

    def integrate(self, values) -> float:
        return float(np.dot(self.weights, values))

    def scaled(self, c: float) -> "DiscreteMeasure":
        if not c > 0:
            raise errors.InvalidWeight("scale factor must be positive", factor=c)
        return replace(self, weights=_frozen(self.weights * c))


def make_measure(dim, raw_atoms) -> DiscreteMeasure:
    """Build a measure from ``(vector, weight)`` pairs.

    Vectors are normalized to unit length and atoms closer than
    ``MERGE_TOL`` (chordal distance) are merged by summing weights, the
    first occurrence fixing the direction.
    """
    if int(dim) != dim or dim < 2:
        raise errors.InvalidParameter("dimension must be an integer >= 2", dim=dim)
    dim = int(dim)
    raw_atoms = list(raw_atoms)
    if not raw_atoms:
        raise errors.EmptyMeasure("measure has no atoms")
    vecs = np.empty((len(raw_atoms), dim))
    w = np.empty(len(raw_atoms))
    for i, (v, wt) in enumerate(raw_atoms):
        v = np.asarray(v, dtype=float)
        if v.shape != (dim,) or not np.all(np.isfinite(v)):
            raise errors.InvalidAtom(f"atom {i} is not a finite vector of length {dim}",
                                     index=i)
        nv = np.linalg.norm(v)
        if nv == 0.0:
            raise errors.InvalidAtom(f"atom {i} is the zero vector", index=i)
        wt = float(wt)
        if not (wt > 0 and math.isfinite(wt)):
            raise errors.InvalidWeight(f"atom {i} has nonpositive weight {wt}", index=i)
        # leave unit vectors alone so that file round trips are exact
        vecs[i] = v if abs(nv - 1.0) <= 4e-16 else v / nv
        w[i] = wt
    dirs, w = _merge(vecs, w)
    return DiscreteMeasure(dim, _frozen(dirs), _frozen(w))


def from_arrays(directions, weights) -> DiscreteMeasure:
    directions = np.atleast_2d(np.asarray(directions, dtype=float))
    return make_measure(directions.shape[1], zip(directions, np.asarray(weights, float)))


def _merge(dirs, w):
    pairs = cKDTree(dirs).query_pairs(MERGE_TOL, output_type="ndarray")
    if len(pairs) == 0:
        return dirs, w
    parent = list(range(len(w)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in pairs:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    roots = np.array([find(i) for i in range(len(w))])
    keep = np.flatnonzero(roots == np.arange(len(w)))
    merged = np.zeros(len(w))
    np.add.at(merged, roots, w)
    return dirs[keep], merged[keep]


def check_directions(directions, tol=1e-10):
    """Test whether ``directions`` positively span R^n.

    Returns ``(passes, witness)``; on failure ``witness`` is a unit vector
    ``v`` with ``<u_i, v> <= 0`` for every direction.
    """
    U = np.atleast_2d(np.asarray(directions, dtype=float))
    m, n = U.shape
    # maximize -<sum u_i, v> over {U v <= 0, |v|_inf <= 1}; a positive
    # optimum exhibits a closed hemisphere containing every atom
    A = np.vstack([U, np.eye(n), -np.eye(n)])
    b = np.concatenate([np.zeros(m), np.ones(2 * n)])
    res = maximize(-U.sum(axis=0), A, b)
    if res.value > tol:
        v = res.x / np.linalg.norm(res.x)
        return False, v
    # optimum 0: the cone {U v <= 0} is the orthogonal complement of span(U)
    _, s, vt = np.linalg.svd(U, full_matrices=True)
    rank = int(np.sum(s > 1e-12 * max(1.0, s[0])))
    if rank == n:
        return True, None
    v = vt[-1]
    first = np.flatnonzero(np.abs(v) > 1e-12)[0]
    return False, v * np.sign(v[first])


def hemisphere_check(mu: DiscreteMeasure):
    """Return ``(passes, witness)`` for the hemisphere condition.

    Positive weights cannot change the verdict, so only the directions are
    inspected.
    """
    if mu.hemisphere is Hemisphere.PASSES:
        return True, None
    if mu.hemisphere is Hemisphere.FAILS:
        return False, mu.witness
    return check_directions(mu.directions)


def checked(mu: DiscreteMeasure) -> DiscreteMeasure:
    """Copy of ``mu`` with the hemisphere status filled in."""
    ok, wit = hemisphere_check(mu)
    status = Hemisphere.PASSES if ok else Hemisphere.FAILS
    return replace(mu, hemisphere=status,
                   witness=None if wit is None else _frozen(wit))


def require_hemisphere(mu: DiscreteMeasure, exc=errors.InvalidMeasure) -> DiscreteMeasure:
    mu = checked(mu)
    if mu.hemisphere is not Hemisphere.PASSES:
        raise exc("measure is concentrated on a closed hemisphere",
                  witness=[float(x) for x in mu.witness])
    return mu


def sphere_area(dim: int) -> float:
    """Surface measure of S^{dim-1}, i.e. dim * omega_dim."""
    return dim * ball_volume(dim)


def ball_volume(dim: int) -> float:
    return math.pi ** (dim / 2.0) / math.gamma(dim / 2.0 + 1.0)


def sphere_grid(dim: int, resolution: int):
    """Deterministic quadrature nodes on S^{dim-1}.

    Returns ``(directions, weights)`` with weights summing to the sphere
    area. In 2D the nodes are ``resolution`` equiangular directions with
    equal weights.

    In 3D the sphere is cut into latitude bands whose cells all have the
    same area, with one node per cell (``resolution`` is the target count).
    Each band's longitudes are offset by a golden-ratio phase so that nodes
    from adjacent bands are never cocircular. The weights are lumped from
    the inscribed polytope: a node gets a third of the cones over its
    incident hull triangles, rescaled to total ``4 pi``. For that choice the
    uniform measure is balanced against the polytope with these normals,
    which keeps the ball discretization extremal among its neighbours.
    """
    if dim not in (2, 3):
        raise errors.UnsupportedDimension(f"no deterministic grid for dim={dim}", dim=dim)
    resolution = int(resolution)
    least = 3 if dim == 2 else 8
    if resolution < least:
        raise errors.InvalidParameter(f"grid resolution must be >= {least}",
                                      resolution=resolution)
    if dim == 2:
        ang = 2.0 * np.pi * np.arange(resolution) / resolution
        dirs = np.column_stack([np.cos(ang), np.sin(ang)])
        return dirs, np.full(resolution, 2.0 * np.pi / resolution)
    return _lumped(_band_nodes(resolution))


def _band_nodes(resolution):
    cell = 4.0 * np.pi / resolution
    n_bands = max(2, int(round(np.pi / math.sqrt(cell))))
    dtheta = np.pi / n_bands
    mid = (np.arange(n_bands) + 0.5) * dtheta
    counts = np.maximum(1, np.rint(2.0 * np.pi * np.sin(mid) * dtheta / cell)).astype(int)
    # band edges chosen so every cell has area 4 pi / total
    total = int(counts.sum())
    z_edges = 1.0 - 2.0 * np.concatenate([[0], np.cumsum(counts)]) / total
    dirs = []
    for k, count in enumerate(counts):
        z = 0.5 * (z_edges[k] + z_edges[k + 1])  # splits the band area in half
        r = math.sqrt(max(0.0, 1.0 - z * z))
        phase = (k * _GOLDEN) % 1.0
        phi = 2.0 * np.pi * (np.arange(count) + phase) / count
        dirs.append(np.column_stack([r * np.cos(phi), r * np.sin(phi), np.full(count, z)]))
    dirs = np.vstack(dirs)
    return dirs / np.linalg.norm(dirs, axis=1)[:, None]


def _lumped(dirs):
    tri = hull3d(dirs).triangles
    cone = np.einsum("ij,ij->i", dirs[tri[:, 0]],
                     np.cross(dirs[tri[:, 1]], dirs[tri[:, 2]]))
    w = np.bincount(tri.ravel(), np.repeat(cone, 3), len(dirs))
    return dirs, w * (4.0 * np.pi / w.sum())


def perturb_measure(mu: DiscreteMeasure, delta: float, seed: int) -> DiscreteMeasure:
    """Multiply each weight by an independent factor in ``[1-delta, 1+delta]``.

    The factors are ``1 + delta * xi_i`` with ``xi`` drawn uniformly from
    ``[-1, 1]`` by a generator seeded with ``seed``; for a fixed seed the
    same ``xi`` is used for every ``delta``.
    """
    delta = float(delta)
    if delta < 0:
        raise errors.InvalidParameter("perturbation size must be nonnegative", delta=delta)
    if delta >= 1:
        raise errors.PerturbationTooLarge("perturbation size must be < 1", delta=delta)
    xi = np.random.default_rng(seed).uniform(-1.0, 1.0, size=len(mu))
    return replace(mu, weights=_frozen(mu.weights * (1.0 + delta * xi)))
