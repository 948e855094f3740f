"""``pettylab`` command line.

Every command prints a JSON (or CSV) document on stdout and, with
``--out DIR``, writes the same artifacts into DIR. Exit status is 0 on
success, 2 on invalid input and 3 on numeric failure; errors go to stderr
as a single JSON object.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import errors, serialize
from .bodies import facet_areas, polar_volume, tighten, volume
from .experiments import continuity_experiment, degenerate_family_demo, random_audit
from .functionals import (AUDIT_KINDS, CapacitarySetup, ball_capacitary_setup,
                          hat_orlicz_mixed_pcapacity, hat_orlicz_mixed_volume,
                          inequality_audit, mixed_volume_q, orlicz_mixed_pcapacity,
                          orlicz_mixed_volume)
from .measures import hemisphere_check
from .orlicz import parse_phi
from .solver import (CAPACITARY, Mode, SolveConfig, capacitary_spec, make_spec,
                     objective_eval, solve)

FUNCTIONALS = ("objective", "volume", "polar_volume", "surface_area", "mixed_volume_q",
               "orlicz_mixed_volume", "hat_orlicz_mixed_volume", "capacity",
               "orlicz_mixed_pcapacity", "hat_orlicz_mixed_pcapacity")


def _floats(text):
    try:
        return [float(x) for x in text.replace(";", ",").split(",") if x.strip()]
    except ValueError:
        raise errors.InvalidParameter(f"not a number list: {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        sys.stderr.write(json.dumps({"error": "usage", "message": message}) + "\n")
        sys.exit(2)


def _parser():
    ap = _Parser(prog="pettylab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, solver=False):
        p.add_argument("--out", help="directory for artifacts")
        p.add_argument("--format", choices=("json", "csv", "svg"), default=None)
        if solver:
            p.add_argument("--starts", type=int, default=8)
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--tol", type=float, default=1e-10)
        return p

    p = common(sub.add_parser("check-measure", help="hemisphere test"))
    p.add_argument("--measure", required=True)

    p = common(sub.add_parser("eval", help="evaluate one functional"))
    p.add_argument("functional", choices=FUNCTIONALS)
    p.add_argument("--body")
    p.add_argument("--body2", help="second body (L) for mixed functionals")
    p.add_argument("--measure")
    p.add_argument("--setup")
    p.add_argument("--ball", nargs=4, metavar=("n", "p", "r", "res"))
    p.add_argument("--phi")
    p.add_argument("--mode", choices=[m.value for m in Mode])
    p.add_argument("--q", type=float)

    p = common(sub.add_parser("solve", help="minimize over normalized bodies"), True)
    p.add_argument("--request", help="solve request JSON (flags override it)")
    p.add_argument("--mode", choices=[m.value for m in Mode])
    p.add_argument("--measure")
    p.add_argument("--phi")
    p.add_argument("--p", type=float)
    p.add_argument("--setup")

    p = common(sub.add_parser("capacitary", help="capacitary Petty body"), True)
    p.add_argument("--setup")
    p.add_argument("--ball", nargs=4, metavar=("n", "p", "r", "res"))
    p.add_argument("--phi", required=True)
    p.add_argument("--homogeneous", action="store_true")

    p = common(sub.add_parser("continuity", help="perturbation trend table"), True)
    p.add_argument("--mode", default="plain_polar", choices=[m.value for m in Mode])
    p.add_argument("--measure")
    p.add_argument("--setup")
    p.add_argument("--phi", required=True)
    p.add_argument("--deltas", default="1e-2,1e-3,1e-4")

    p = common(sub.add_parser("degenerate", help="degenerate family trend table"))
    p.add_argument("--kind", choices=("i", "ii"), required=True)
    p.add_argument("--measure", required=True)
    p.add_argument("--phi", required=True)
    p.add_argument("--epsilons", default="0.5,0.2,0.1,0.05")

    p = common(sub.add_parser("audit", help="inequality margin table"))
    p.add_argument("--kind", default="all", choices=("all",) + AUDIT_KINDS)
    p.add_argument("--body")
    p.add_argument("--body2")
    p.add_argument("--setup")
    p.add_argument("--phi")
    p.add_argument("--q", type=float)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    return ap


# ---------------------------------------------------------------------------
# helpers

class _Output:
    """Collects named artifacts; the first one is echoed on stdout."""

    def __init__(self, out_dir):
        self.dir = out_dir
        self.items = []

    def add(self, name, text):
        self.items.append((name, text))

    def pick(self, fmt):
        """Artifact echoed on stdout: the first one, or the first ``.fmt`` one."""
        if fmt is None:
            return self.items[0] if self.items else None
        return next((x for x in self.items if x[0].endswith("." + fmt)), None)

    def flush(self, shown):
        if self.dir:
            os.makedirs(self.dir, exist_ok=True)
            for name, text in self.items:
                with open(os.path.join(self.dir, name), "w", encoding="utf-8",
                          newline="") as fh:
                    fh.write(text)
        if shown is not None:
            sys.stdout.write(shown[1])


def _need(args, *names):
    for n in names:
        if getattr(args, n, None) in (None, ""):
            raise errors.InvalidParameter(f"--{n} is required for this command")


def _setup(args) -> CapacitarySetup:
    if getattr(args, "ball", None):
        try:
            n, p, r, res = int(args.ball[0]), float(args.ball[1]), float(args.ball[2]), \
                int(args.ball[3])
        except ValueError:
            raise errors.InvalidParameter("--ball expects: n p r res") from None
        return ball_capacitary_setup(n, p, r, res)
    if getattr(args, "setup", None):
        return serialize.setup_from_json(args.setup)
    raise errors.InvalidParameter("need --setup FILE or --ball n p r res")


def _config(args, **over):
    cfg = SolveConfig(starts=args.starts, seed=args.seed, tol=args.tol)
    for k, v in over.items():
        if v is not None:
            setattr(cfg, k, v)
    return cfg


def _spec(mode, args, phi):
    mode = Mode(mode)
    if mode in CAPACITARY:
        return capacitary_spec(_setup(args), phi, homogeneous=mode is Mode.CAPACITARY_HOM)
    _need(args, "measure")
    return make_spec(mode, serialize.measure_from_json(args.measure), phi)


def _report_artifacts(out, rep, spec):
    out.add("report.json", serialize.dumps(rep.to_dict()))
    body = rep.normalized_body
    out.add("body.json", serialize.dumps(serialize.body_to_json(body, with_vertices=True)))
    if body.dim == 2:
        out.add("body.svg", serialize.body_svg(body, spec.measure))


# ---------------------------------------------------------------------------
# commands

def cmd_check_measure(args, out):
    mu = serialize.measure_from_json(args.measure)
    ok, witness = hemisphere_check(mu)
    doc = {"verdict": "passes" if ok else "fails", "dim": mu.dim, "atoms": len(mu),
           "mass": mu.mass, "witness": None if witness is None else witness.tolist()}
    out.add("check.json", serialize.dumps(doc))


def _check_normals(P, spec):
    if P.normals.shape != spec.measure.directions.shape or not np.allclose(
            P.normals, spec.measure.directions, atol=1e-12, rtol=0):
        raise errors.DimensionMismatch("body normals must be the measure atoms, in order")


def cmd_eval(args, out):
    name = args.functional
    phi = parse_phi(args.phi) if args.phi else None
    if name in ("objective", "orlicz_mixed_volume", "hat_orlicz_mixed_volume",
                "orlicz_mixed_pcapacity", "hat_orlicz_mixed_pcapacity") and phi is None:
        raise errors.InvalidParameter(f"{name} needs --phi")
    doc = {"functional": name}
    if name == "objective":
        _need(args, "mode", "body")
        spec = _spec(args.mode, args, phi)
        P = serialize.body_from_json(args.body)
        _check_normals(P, spec)
        doc.update(mode=spec.mode.value, phi=phi.spec, value=objective_eval(spec, P.supports))
    elif name == "capacity":
        s = _setup(args)
        doc.update(p=s.p, value=s.cp)
    elif name in ("orlicz_mixed_pcapacity", "hat_orlicz_mixed_pcapacity"):
        _need(args, "body")
        s = _setup(args)
        L = serialize.body_from_json(args.body)
        if name == "orlicz_mixed_pcapacity":
            doc.update(phi=phi.spec, value=orlicz_mixed_pcapacity(s, L, phi))
        else:
            r = hat_orlicz_mixed_pcapacity(s, L, phi)
            doc.update(phi=phi.spec, value=r.value, residual=r.residual)
    else:
        _need(args, "body")
        K = serialize.body_from_json(args.body)
        if name == "volume":
            doc["value"] = volume(K)
        elif name == "polar_volume":
            doc["value"] = polar_volume(K)
        elif name == "surface_area":
            doc["value"] = float(facet_areas(tighten(K)).sum())
        else:
            _need(args, "body2")
            L = serialize.body_from_json(args.body2)
            if name == "mixed_volume_q":
                _need(args, "q")
                doc.update(q=args.q, value=mixed_volume_q(K, L, args.q))
            elif name == "orlicz_mixed_volume":
                doc.update(phi=phi.spec, value=orlicz_mixed_volume(K, L, phi))
            else:
                r = hat_orlicz_mixed_volume(K, L, phi)
                doc.update(phi=phi.spec, value=r.value, residual=r.residual)
    out.add("eval.json", serialize.dumps(doc))


def cmd_solve(args, out):
    req = {}
    base = None
    if args.request:
        req = serialize._load(args.request)
        base = os.path.dirname(os.path.abspath(args.request))

    def rel(x):
        if isinstance(x, str) and base and not os.path.isabs(x):
            return os.path.join(base, x)
        return x

    for key in ("mode", "phi", "p"):
        if getattr(args, key) is None and key in req:
            setattr(args, key, req[key])
    for key in ("measure", "setup"):
        if getattr(args, key) is None and key in req:
            setattr(args, key, rel(req[key]))
    _need(args, "mode", "phi")
    conf = req.get("config", {})
    for key in ("starts", "seed", "tol"):
        if key in conf and getattr(args, key) == _parser_defaults[key]:
            setattr(args, key, type(_parser_defaults[key])(conf[key]))
    spec = _spec(args.mode, args, parse_phi(args.phi))
    if args.p is not None and spec.p is not None and abs(args.p - spec.p) > 1e-12:
        raise errors.InvalidExponent("--p disagrees with the setup", p=args.p, setup=spec.p)
    rep = solve(spec, _config(args))
    _report_artifacts(out, rep, spec)


def cmd_capacitary(args, out):
    spec = capacitary_spec(_setup(args), parse_phi(args.phi), args.homogeneous)
    rep = solve(spec, _config(args))
    _report_artifacts(out, rep, spec)


def cmd_continuity(args, out):
    spec = _spec(args.mode, args, parse_phi(args.phi))
    rows = continuity_experiment(spec, _floats(args.deltas), seed=args.seed,
                                 config=_config(args))
    out.add("continuity.csv", serialize.csv_text(
        ("delta", "objective", "objective_gap", "hausdorff"),
        [(r.delta, r.objective, r.objective_gap, r.hausdorff) for r in rows]))


def cmd_degenerate(args, out):
    mu = serialize.measure_from_json(args.measure)
    rows = degenerate_family_demo(args.kind, _floats(args.epsilons), mu, parse_phi(args.phi))
    out.add("degenerate.csv", serialize.csv_text(
        ("eps", "objective", "bound", "polar_volume_error"),
        [(r.eps, r.objective, r.bound, r.polar_volume_error) for r in rows]))


def cmd_audit(args, out):
    phi = parse_phi(args.phi) if args.phi else None
    kinds = AUDIT_KINDS if args.kind == "all" else (args.kind,)
    rows = []
    if args.body or args.setup:
        # audit the given inputs only
        K = serialize.body_from_json(args.body) if args.body else None
        L = serialize.body_from_json(args.body2) if args.body2 else None
        s = serialize.setup_from_json(args.setup) if args.setup else None
        f = phi or parse_phi("pow:2")
        for kind in kinds:
            if kind == "isocapacitary":
                if s is not None:
                    rows.append(inequality_audit(kind, setup=s))
            elif kind.startswith(("capacitary", "hat_capacitary")):
                if s is not None and (L or K) is not None:
                    rows.append(inequality_audit(kind, setup=s, L=L or K, phi=f))
            elif K is not None and L is not None:
                rows.append(inequality_audit(kind, K=K, L=L, phi=f,
                                             q=1.0 if args.q is None else args.q))
        if not rows:
            raise errors.InvalidParameter("inputs do not fit any requested audit kind")
    else:
        for kind in kinds:
            rows += random_audit(kind, args.count, seed=args.seed, phi=phi, q=args.q)
    out.add("audit.csv", serialize.csv_text(
        ("kind", "lhs", "rhs", "margin"), [(r.kind, r.lhs, r.rhs, r.margin) for r in rows]))


COMMANDS = {"check-measure": cmd_check_measure, "eval": cmd_eval, "solve": cmd_solve,
            "capacitary": cmd_capacitary, "continuity": cmd_continuity,
            "degenerate": cmd_degenerate, "audit": cmd_audit}
_parser_defaults = {"starts": 8, "seed": 0, "tol": 1e-10}


def _error_exit(exc, code):
    payload = exc.to_dict() if isinstance(exc, errors.PettyError) else {
        "error": "invalid-input", "message": str(exc)}
    sys.stderr.write(json.dumps(payload, sort_keys=True) + "\n")
    return code


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    out = _Output(args.out)
    try:
        COMMANDS[args.command](args, out)
    except errors.ValidationError as exc:
        return _error_exit(exc, 2)
    except errors.NumericFailure as exc:
        return _error_exit(exc, 3)
    except errors.PettyError as exc:
        return _error_exit(exc, 3)
    except (OSError, ValueError) as exc:
        return _error_exit(exc, 2)
    shown = out.pick(args.format)
    if shown is None:
        return _error_exit(errors.InvalidParameter(
            f"command {args.command} has no {args.format} output"), 2)
    out.flush(shown)
    return 0


if __name__ == "__main__":
    sys.exit(main())
