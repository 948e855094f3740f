"""Mixed volumes, Orlicz mixed volumes and Orlicz mixed p-capacities.

All integrals against sphere measures are finite sums over atoms. Mixed
volumes integrate against the surface area measure of the first body;
capacitary functionals integrate against a capacitary measure supplied as
data (balls have a closed form, see :func:`ball_capacitary_setup`).
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import errors
from .bodies import (HPolytope, ball_hpolytope, facet_areas, scale, support_values,
                     tighten, volume)
from .measures import (DiscreteMeasure, Hemisphere, ball_volume, from_arrays,
                       require_hemisphere, sphere_area, sphere_grid)
from .orlicz import OrliczFunction, luxemburg_norm


@dataclass(frozen=True)
class FunctionalValue:
    value: float
    residual: float = 0.0
    iterations: int = 0

    def __float__(self):
        return self.value


@dataclass(frozen=True, eq=False)
class CapacitarySetup:
    """Body ``K``, exponent ``p`` and the capacitary measure of ``K``.

    ``h_atoms`` holds ``h_K`` at the atoms of ``mu_p``; ``cp`` is the
    capacity obtained from the Poincare-type identity. ``radius`` is set
    only for ball setups, where the volume is known analytically.
    """

    body: HPolytope
    p: float
    mu_p: DiscreteMeasure
    cp: float
    h_atoms: np.ndarray
    radius: float | None = None

    @property
    def dim(self):
        return self.body.dim

    @property
    def factor(self):
        n = self.body.dim
        return (self.p - 1.0) / (n - self.p)

    def body_volume(self) -> float:
        if self.radius is not None:
            return self.radius ** self.dim * ball_volume(self.dim)
        return volume(self.body)


def _check_dims(K, L):
    if K.dim != L.dim:
        raise errors.DimensionMismatch("bodies live in different dimensions",
                                       dims=[K.dim, L.dim])


def _facet_data(K, L):
    _check_dims(K, L)
    Kt = tighten(K)
    S = facet_areas(Kt)
    keep = S > 0
    u = Kt.normals[keep]
    return Kt.supports[keep], support_values(L, u), S[keep]


def mixed_volume_q(K: HPolytope, L: HPolytope, q: float) -> float:
    if q == 0:
        raise errors.InvalidParameter("q must be nonzero")
    hK, hL, S = _facet_data(K, L)
    return float(np.sum((hL / hK) ** q * hK * S) / K.dim)


def orlicz_mixed_volume(K: HPolytope, L: HPolytope, phi: OrliczFunction) -> float:
    hK, hL, S = _facet_data(K, L)
    return float(np.sum(phi(hL / hK) * hK * S) / K.dim)


def orlicz_mixed_volume_two(K, L, phi: OrliczFunction, psi: OrliczFunction) -> float:
    hK, hL, S = _facet_data(K, L)
    return float(np.sum(phi(hL) / psi(hK) * S) / K.dim)


def hat_orlicz_mixed_volume(K, L, phi: OrliczFunction) -> FunctionalValue:
    """Root ``lam`` of ``sum phi(n|K| h_L / (lam h_K)) h_K S = n|K|``."""
    if phi.class_tag != "I":
        raise errors.InvalidParameter("homogeneous Orlicz mixed volume needs phi in class I")
    hK, hL, S = _facet_data(K, L)
    w = hK * S
    nK = float(w.sum())  # n|K|
    lam, res, it = luxemburg_norm(nK * hL / hK, w, phi)
    return FunctionalValue(lam, res, it)


# ---------------------------------------------------------------------------
# capacities

def cp_from_measure(K: HPolytope, p: float, mu_p: DiscreteMeasure) -> CapacitarySetup:
    n = K.dim
    if not (1.0 < p < n):
        raise errors.InvalidExponent(f"p must lie in (1, {n})", p=p)
    if mu_p.dim != n:
        raise errors.DimensionMismatch("measure and body dimensions differ")
    mu_p = require_hemisphere(mu_p)
    h = support_values(K, mu_p.directions)
    cp = (p - 1.0) / (n - p) * float(h @ mu_p.weights)
    return CapacitarySetup(K, float(p), mu_p, cp, h)


def ball_capacity(dim: int, p: float, r: float = 1.0) -> float:
    return r ** (dim - p) * ((dim - p) / (p - 1.0)) ** (p - 1.0) * sphere_area(dim)


def ball_capacitary_setup(dim, p, r, resolution) -> CapacitarySetup:
    """Discretized ball ``r B`` with a uniform capacitary measure.

    The measure has the exact total mass of the ball's capacitary measure,
    so the capacity matches the closed form up to rounding.
    """
    n = int(dim)
    if not (1.0 < p < n):
        raise errors.InvalidExponent(f"p must lie in (1, {n})", p=p)
    if not r > 0:
        raise errors.InvalidParameter("radius must be positive", r=r)
    body = ball_hpolytope(n, r, resolution)
    dirs, qw = sphere_grid(n, resolution)
    mass = r ** (n - p - 1.0) * ((n - p) / (p - 1.0)) ** p * sphere_area(n)
    mu = from_arrays(dirs, mass * qw / qw.sum())
    mu = replace(mu, hemisphere=Hemisphere.PASSES)
    h = np.full(len(mu), float(r))
    cp = (p - 1.0) / (n - p) * float(h @ mu.weights)
    return CapacitarySetup(body, float(p), mu, cp, h, radius=float(r))


def scale_setup(setup: CapacitarySetup, s: float) -> CapacitarySetup:
    """Setup of ``sK``: the capacitary measure scales by ``s^(n-p-1)``."""
    n, p = setup.dim, setup.p
    mu = replace(setup.mu_p, weights=setup.mu_p.weights * s ** (n - p - 1.0))
    return CapacitarySetup(scale(setup.body, s), p, mu, setup.cp * s ** (n - p),
                           setup.h_atoms * s,
                           None if setup.radius is None else setup.radius * s)


def normalized_capacitary_measure(setup: CapacitarySetup) -> DiscreteMeasure:
    w = setup.factor * setup.h_atoms * setup.mu_p.weights / setup.cp
    return replace(setup.mu_p, weights=w)


def orlicz_mixed_pcapacity(setup: CapacitarySetup, L: HPolytope, phi: OrliczFunction) -> float:
    _check_dims(setup.body, L)
    hK = setup.h_atoms
    hL = support_values(L, setup.mu_p.directions)
    return setup.factor * float(np.sum(phi(hL / hK) * hK * setup.mu_p.weights))


def hat_orlicz_mixed_pcapacity(setup: CapacitarySetup, L: HPolytope,
                               phi: OrliczFunction) -> FunctionalValue:
    """Root ``eta`` of ``sum phi(C_p h_L / (eta h_K)) w* = 1``."""
    _check_dims(setup.body, L)
    hL = support_values(L, setup.mu_p.directions)
    w_star = normalized_capacitary_measure(setup).weights
    eta, res, it = luxemburg_norm(setup.cp * hL / setup.h_atoms, w_star, phi)
    return FunctionalValue(eta, res, it)


def isocapacitary_bound(dim, p, vol) -> float:
    """Lower bound for ``C_p`` of any body of volume ``vol``."""
    return (dim * ball_volume(dim) ** (p / dim) * ((dim - p) / (p - 1.0)) ** (p - 1.0)
            * vol ** ((dim - p) / dim))


# ---------------------------------------------------------------------------
# inequality audits

@dataclass(frozen=True)
class AuditRow:
    kind: str
    lhs: float
    rhs: float

    @property
    def margin(self) -> float:
        return (self.lhs - self.rhs) / abs(self.rhs)

    def as_dict(self):
        return {"kind": self.kind, "lhs": self.lhs, "rhs": self.rhs, "margin": self.margin}


AUDIT_KINDS = ("minkowski_q", "orlicz_minkowski", "hat_orlicz_minkowski", "isocapacitary",
               "capacitary_orlicz_minkowski", "hat_capacitary_orlicz_minkowski")


def _capacity_of(L):
    """``(body, C_p or None)`` for a body or a setup."""
    if isinstance(L, CapacitarySetup):
        return L.body, L.cp
    return L, None


def inequality_audit(kind: str, **inp) -> AuditRow:
    """Evaluate both sides of a named inequality; never raises on violation.

    For the capacitary inequalities ``L`` may be a plain body, in which case
    its unknown capacity is replaced by the isocapacitary lower bound from
    its volume. Both right-hand sides increase with ``C_p(L)``, so the
    audited inequality is implied by the original one.
    """
    if kind == "minkowski_q":
        K, L, q = inp["K"], inp["L"], inp["q"]
        n = K.dim
        rhs = volume(K) ** ((n - q) / n) * volume(L) ** (q / n)
        return AuditRow(kind, mixed_volume_q(K, L, q), rhs)
    if kind == "orlicz_minkowski":
        K, L, phi = inp["K"], inp["L"], inp["phi"]
        vK, vL = volume(K), volume(L)
        rhs = vK * float(phi((vL / vK) ** (1.0 / K.dim)))
        return AuditRow(kind, orlicz_mixed_volume(K, L, phi), rhs)
    if kind == "hat_orlicz_minkowski":
        K, L, phi = inp["K"], inp["L"], inp["phi"]
        n = K.dim
        rhs = n * volume(K) ** ((n - 1.0) / n) * volume(L) ** (1.0 / n)
        return AuditRow(kind, hat_orlicz_mixed_volume(K, L, phi).value, rhs)
    if kind == "isocapacitary":
        s = inp["setup"]
        return AuditRow(kind, s.cp, isocapacitary_bound(s.dim, s.p, s.body_volume()))
    if kind in ("capacitary_orlicz_minkowski", "hat_capacitary_orlicz_minkowski"):
        s, phi = inp["setup"], inp["phi"]
        L, cpL = _capacity_of(inp["L"])
        if cpL is None:
            cpL = isocapacitary_bound(s.dim, s.p, volume(L))
        ratio = (cpL / s.cp) ** (1.0 / (s.dim - s.p))
        if kind == "capacitary_orlicz_minkowski":
            return AuditRow(kind, orlicz_mixed_pcapacity(s, L, phi),
                            s.cp * float(phi(ratio)))
        return AuditRow(kind, hat_orlicz_mixed_pcapacity(s, L, phi).value, s.cp * ratio)
    raise errors.InvalidParameter(f"unknown audit kind {kind!r}", kind=kind)
