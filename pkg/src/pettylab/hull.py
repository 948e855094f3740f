"""Convex hulls and volumes of point sets in dimensions 2 and 3.

2D uses Andrew's monotone chain (hull returned counter-clockwise), 3D
defers to Qhull through scipy and re-orients its triangles outward.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from . import errors


def chain2d(points):
    """Indices of the 2D hull vertices in counter-clockwise order.

    Collinear boundary points are dropped.
    """
    pts = np.asarray(points, dtype=float)
    order = np.lexsort((pts[:, 1], pts[:, 0]))

    def cross(o, a, b):
        return ((pts[a, 0] - pts[o, 0]) * (pts[b, 1] - pts[o, 1])
                - (pts[a, 1] - pts[o, 1]) * (pts[b, 0] - pts[o, 0]))

    lower, upper = [], []
    for i in order:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], i) <= 0:
            lower.pop()
        lower.append(i)
    for i in order[::-1]:
        while len(upper) >= 2 and cross(upper[-2], upper[-1], i) <= 0:
            upper.pop()
        upper.append(i)
    return np.array(lower[:-1] + upper[:-1], dtype=int)


def shoelace(poly):
    x, y = poly[:, 0], poly[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


@dataclass
class Hull3:
    points: np.ndarray
    vertices: np.ndarray   # indices of hull vertices
    triangles: np.ndarray  # (k, 3) outward-oriented index triples
    normals: np.ndarray    # (k, 3) outward unit normals
    offsets: np.ndarray    # normals @ x <= offsets on the hull


def hull3d(points) -> Hull3:
    pts = np.asarray(points, dtype=float)
    try:
        h = ConvexHull(pts)
    except QhullError as exc:
        raise errors.DegenerateHull("3D point set is flat or too small") from exc
    tri = h.simplices.copy()
    nrm = h.equations[:, :3]
    a, b, c = pts[tri[:, 0]], pts[tri[:, 1]], pts[tri[:, 2]]
    flip = np.einsum("ij,ij->i", np.cross(b - a, c - a), nrm) < 0
    tri[flip, 1], tri[flip, 2] = tri[flip, 2], tri[flip, 1].copy()
    return Hull3(pts, h.vertices, tri, nrm, -h.equations[:, 3])


def hull_volume(points) -> float:
    """Volume (area in 2D) of the convex hull of ``points``."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    dim = pts.shape[1]
    if dim == 2:
        if len(pts) < 3:
            raise errors.DegenerateHull("need at least 3 points for a 2D hull")
        poly = pts[chain2d(pts)]
        area = shoelace(poly) if len(poly) >= 3 else 0.0
        scale = np.ptp(pts, axis=0).max() ** 2
        if area <= 1e-14 * max(scale, 1e-300):
            raise errors.DegenerateHull("2D point set is collinear")
        return area
    if dim == 3:
        h = hull3d(pts)
        c = pts[h.vertices].mean(axis=0)
        a, b, d = (pts[h.triangles[:, k]] - c for k in range(3))
        return float(np.einsum("ij,ij->i", a, np.cross(b, d)).sum() / 6.0)
    raise errors.UnsupportedDimension(f"exact hull volume needs dim 2 or 3, got {dim}",
                                      dim=dim)
