"""Reference values computed without the package's own geometry code.

Polytope quantities go through scipy's Qhull wrappers (halfspace
intersection and ConvexHull) instead of the package's polar construction;
the solver oracles are brute-force searches over symmetric families.
"""
import math

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.spatial import ConvexHull, HalfspaceIntersection


def ball_volume(n):
    return math.pi ** (n / 2) / math.gamma(n / 2 + 1)


def hpoly_vertices(normals, supports):
    U = np.asarray(normals, float)
    h = np.asarray(supports, float)
    # origin is interior because every support is positive
    hs = np.column_stack([U, -h])
    return HalfspaceIntersection(hs, np.zeros(U.shape[1])).intersections


def hpoly_volume(normals, supports):
    return ConvexHull(hpoly_vertices(normals, supports)).volume


def hpoly_polar_volume(normals, supports):
    pts = np.asarray(normals, float) / np.asarray(supports, float)[:, None]
    return ConvexHull(pts).volume


def hpoly_supports(normals, supports, dirs):
    V = hpoly_vertices(normals, supports)
    return (np.atleast_2d(dirs) @ V.T).max(axis=1)


def square_oracle(samples=200001):
    """Symmetric rectangles [-a, a] x [-b, b] with polar area pi.

    The polar of the rectangle is the rhombus with area 2 / (a b), so the
    normalization forces a b = 2 / pi; minimize 2a + 2b by grid search and
    a bounded scalar refinement around the best grid node.
    """
    ab = 2.0 / math.pi
    a = np.linspace(0.05, 3.0, samples)
    obj = 2 * a + 2 * ab / a
    k = int(np.argmin(obj))
    lo, hi = a[max(k - 1, 0)], a[min(k + 1, samples - 1)]
    res = minimize_scalar(lambda t: 2 * t + 2 * ab / t, bounds=(lo, hi),
                          method="bounded", options={"xatol": 1e-14})
    return res.x, ab / res.x, res.fun


def triangle_oracle():
    """Equal supports h on atoms at 90, 210, 330 degrees.

    Bisection on h for shoelace(polar triangle) = pi; returns h and 3 h^2.
    """
    ang = np.deg2rad([90.0, 210.0, 330.0])
    U = np.column_stack([np.cos(ang), np.sin(ang)])

    def area(h):
        p = U / h
        x, y = p[:, 0], p[:, 1]
        return 0.5 * abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))

    lo, hi = 0.1, 10.0      # area decreases in h
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if area(mid) > math.pi:
            lo = mid
        else:
            hi = mid
    h = 0.5 * (lo + hi)
    return h, 3 * h * h


def ball_capacity(n, p, r=1.0):
    return ((n - p) / (p - 1)) ** (p - 1) * n * ball_volume(n) * r ** (n - p)


def luxemburg_power(f, w, q):
    f, w = np.asarray(f, float), np.asarray(w, float)
    return float((np.sum(w * f ** q) / w.sum()) ** (1.0 / q))
