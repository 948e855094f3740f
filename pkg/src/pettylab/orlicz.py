"""Orlicz functions and the Luxemburg-type norm.

Class ``I`` functions increase from 0 to infinity, class ``D`` functions
decrease from infinity to 0; both satisfy ``phi(1) = 1``. The norm of
``f`` under a measure is the scale ``lam`` at which the phi-mean of
``f/lam`` equals the total mass. Either class gives a monotone equation in
``lam``, so one bisection routine serves both.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import errors

BRACKET_EXP = 40
SAMPLE_T = np.logspace(-8, 8, 33)


@dataclass(frozen=True, eq=False)
class OrliczFunction:
    kind: str
    q: float | None
    class_tag: str          # "I" or "D"
    convex: bool
    func: Callable
    deriv: Callable | None = None

    def __call__(self, t):
        with np.errstate(over="ignore"):
            return self.func(np.asarray(t, dtype=float))

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        if self.deriv is not None:
            with np.errstate(over="ignore"):
                return self.deriv(t)
        step = 1e-6 * (1.0 + np.abs(t))
        return (self(t + step) - self(np.maximum(t - step, 0.5 * t))) / (
            step + np.minimum(step, 0.5 * t))

    @property
    def spec(self) -> str:
        if self.kind == "power_increasing":
            return f"pow:{self.q:g}"
        if self.kind == "power_decreasing":
            return f"ipow:{self.q:g}"
        if self.kind == "exp_normalized":
            return "expn"
        return "custom"

    def scaled(self, c: float) -> "OrliczFunction":
        """``c * phi`` (not an Orlicz function unless c == 1; used for audits)."""
        f, d = self.func, self.deriv
        return OrliczFunction(self.kind, self.q, self.class_tag, self.convex,
                              lambda t: c * f(t), None if d is None else (lambda t: c * d(t)))


_E1 = math.e - 1.0


def make_phi(kind: str, q: float | None = None, *, func=None, deriv=None) -> OrliczFunction:
    if kind in ("power_increasing", "power_decreasing"):
        if q is None or not (q > 0 and math.isfinite(q)):
            raise errors.InvalidParameter("power exponent must be positive", q=q)
        q = float(q)
        if kind == "power_increasing":
            return OrliczFunction(kind, q, "I", q >= 1.0,
                                  lambda t: t ** q, lambda t: q * t ** (q - 1.0))
        return OrliczFunction(kind, q, "D", False,
                              lambda t: t ** -q, lambda t: -q * t ** (-q - 1.0))
    if kind == "exp_normalized":
        return OrliczFunction(kind, None, "I", True,
                              lambda t: np.expm1(t) / _E1, lambda t: np.exp(t) / _E1)
    if kind == "custom":
        if func is None:
            raise errors.InvalidParameter("custom kind needs an evaluator")
        return _custom(func, deriv)
    raise errors.InvalidParameter(f"unknown Orlicz kind {kind!r}", kind=kind)


def _custom(func, deriv):
    with np.errstate(all="ignore"):
        vals = np.array([float(func(t)) for t in SAMPLE_T])
        one = float(func(1.0))
    if abs(one - 1.0) > 1e-12:
        raise errors.InvalidParameter("custom phi must satisfy phi(1) = 1", phi1=one)
    if not np.all(vals > 0):
        raise errors.InvalidParameter("custom phi must be positive on (0, inf)")
    diff = np.diff(vals)
    if np.all(diff > 0):
        tag = "I"
    elif np.all(diff < 0):
        tag = "D"
    else:
        raise errors.InvalidParameter("custom phi is not strictly monotone on samples")
    vec = np.vectorize(func, otypes=[float])
    dvec = None if deriv is None else np.vectorize(deriv, otypes=[float])
    return OrliczFunction("custom", None, tag, False, vec, dvec)


def parse_phi(text: str) -> OrliczFunction:
    """``pow:q`` (t^q), ``ipow:q`` (t^-q) or ``expn``."""
    text = text.strip()
    if text == "expn":
        return make_phi("exp_normalized")
    head, _, arg = text.partition(":")
    try:
        q = float(arg)
    except ValueError:
        raise errors.InvalidParameter(f"cannot parse phi spec {text!r}") from None
    if head == "pow":
        return make_phi("power_increasing", q)
    if head == "ipow":
        return make_phi("power_decreasing", q)
    raise errors.InvalidParameter(f"cannot parse phi spec {text!r}")


def solve_scale(g, target, start, decreasing):
    """Find ``lam > 0`` with ``g(lam) == target`` for monotone ``g``.

    The bracket grows by doublings from ``start`` (at most ``2**40`` either
    way), then bisection runs until the bracket is a couple of ulps wide.
    Returns ``(lam, relative residual, iterations)``.
    """
    def above(lam):  # is lam past the root?
        v = g(lam)
        return (v < target) if decreasing else (v > target)

    lo = hi = float(start)
    it = 0
    if g(start) == target:
        return lo, 0.0, 0
    if above(start):
        while above(lo):
            lo *= 0.5
            it += 1
            if lo < start * 2.0 ** -BRACKET_EXP:
                raise errors.NumericFailure("bracket expansion failed (lower end)")
    else:
        while not above(hi):
            hi *= 2.0
            it += 1
            if hi > start * 2.0 ** BRACKET_EXP:
                raise errors.NumericFailure("bracket expansion failed (upper end)")
    # invariant: not above(lo), above(hi)
    while hi - lo > 4.0 * np.spacing(hi) and it < 400:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        v = g(mid)
        it += 1
        if v == target:
            lo = hi = mid
            break
        if (v < target) if decreasing else (v > target):
            hi = mid
        else:
            lo = mid
    lam = 0.5 * (lo + hi)
    return lam, abs(g(lam) - target) / abs(target), it


def luxemburg_norm(values, weights, phi: OrliczFunction):
    """Scale ``lam`` solving ``sum_i w_i phi(f_i / lam) = sum_i w_i``.

    ``weights`` may be an array or a :class:`DiscreteMeasure`. Returns
    ``(lam, relative residual, iterations)``.
    """
    w = np.asarray(getattr(weights, "weights", weights), dtype=float)
    f = np.asarray(values, dtype=float)
    if f.shape != w.shape:
        raise errors.DimensionMismatch("values and atoms differ in length",
                                       values=len(f), atoms=len(w))
    if not np.all(f > 0) or not np.all(np.isfinite(f)):
        raise errors.InvalidParameter("norm arguments must be positive and finite")
    mass = float(w.sum())
    return solve_scale(lambda lam: float(w @ phi(f / lam)), mass, float(f.max()),
                       decreasing=phi.class_tag == "I")
