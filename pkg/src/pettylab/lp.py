"""Small dense linear programs.

The geometry code only ever needs ``max c.x  s.t.  A x <= b`` with ``x``
free, few variables (the ambient dimension) and possibly many constraints.
That primal is solved through its dual

    min b.y   s.t.  A^T y = c,  y >= 0,

whose tableau has only ``n`` rows, with a two-phase dense simplex using
Bland's smallest-index rule so degenerate pivots cannot cycle. The primal
optimum is read off the final dual basis: the basic dual variables index
the active primal constraints.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericFailure

TOL = 1e-10


@dataclass(frozen=True)
class LPResult:
    x: np.ndarray
    value: float
    active: tuple
    iterations: int


def _pivot(T, r, k):
    T[r] /= T[r, k]
    col = T[:, k].copy()
    col[r] = 0.0
    T -= np.outer(col, T[r])


def _simplex(T, basis, ncols, tol, max_iter):
    """Minimize over the tableau in place. Returns (status, iterations)."""
    nrows = T.shape[0] - 1
    for it in range(max_iter):
        rc = T[-1, :ncols]
        cand = np.flatnonzero(rc < -tol)
        if cand.size == 0:
            return "optimal", it
        k = cand[0]
        col = T[:nrows, k]
        pos = col > tol
        if not pos.any():
            return "unbounded", it
        ratios = np.full(nrows, np.inf)
        ratios[pos] = T[:nrows, -1][pos] / col[pos]
        rmin = ratios.min()
        ties = np.flatnonzero(ratios <= rmin + tol * max(1.0, abs(rmin)))
        r = min(ties, key=lambda i: basis[i])
        _pivot(T, r, k)
        basis[r] = k
    raise NumericFailure("simplex iteration cap reached (cycling guard)",
                         iterations=max_iter)


def maximize(c, A, b, *, tol=TOL, max_iter=None):
    """Solve ``max c.x`` subject to ``A x <= b`` with ``x`` unrestricted.

    Raises :class:`NumericFailure` when the program is unbounded,
    infeasible, or the pivot budget runs out.
    """
    c = np.asarray(c, dtype=float)
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float)
    m, n = A.shape
    if max_iter is None:
        max_iter = 50 * (m + n) + 100

    sgn = np.where(c < 0, -1.0, 1.0)
    T = np.zeros((n + 1, m + n + 1))
    T[:n, :m] = A.T * sgn[:, None]
    T[:n, m:m + n] = np.eye(n)
    T[:n, -1] = np.abs(c)
    T[-1, :m] = -T[:n, :m].sum(axis=0)
    T[-1, -1] = -np.abs(c).sum()
    basis = list(range(m, m + n))

    status, it1 = _simplex(T, basis, m + n, tol, max_iter)
    infeas = -T[-1, -1]
    if status != "optimal" or infeas > tol * (1.0 + np.abs(c).sum()) * 10:
        raise NumericFailure("linear program is unbounded", phase=1)

    keep = []
    for i in range(n):
        if basis[i] >= m:
            nz = np.flatnonzero(np.abs(T[i, :m]) > tol)
            if nz.size:
                _pivot(T, i, nz[0])
                basis[i] = int(nz[0])
                keep.append(i)
        else:
            keep.append(i)
    if len(keep) < n:
        raise NumericFailure("constraint normals do not span the space")

    T2 = np.empty((n + 1, m + 1))
    T2[:n, :m] = T[keep, :m]
    T2[:n, -1] = T[keep, -1]
    basis = [basis[i] for i in keep]
    cb = b[basis]
    T2[-1, :m] = b - cb @ T2[:n, :m]
    T2[-1, -1] = -cb @ T2[:n, -1]

    status, it2 = _simplex(T2, basis, m, tol, max_iter)
    if status != "optimal":
        raise NumericFailure("linear program is infeasible", phase=2)

    act = np.array(basis)
    x = np.linalg.solve(A[act], b[act])
    return LPResult(x=x, value=float(c @ x), active=tuple(int(i) for i in act),
                    iterations=it1 + it2)
