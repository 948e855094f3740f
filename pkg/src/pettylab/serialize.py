"""JSON, CSV and SVG input/output.

JSON is written with sorted keys and two-space indentation so that equal
inputs give byte-identical files.
"""
from __future__ import annotations

import csv
import io
import json
import os

import numpy as np

from . import errors
from .bodies import HPolytope, make_hpolytope, polar_vertices, tighten, vertices
from .functionals import CapacitarySetup, cp_from_measure
from .hull import chain2d
from .measures import DiscreteMeasure, make_measure


def _load(src):
    """A dict, or the parsed JSON file at ``src``."""
    if isinstance(src, dict):
        return src
    try:
        with open(src, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise errors.InvalidParameter(f"no such file: {src}", path=str(src)) from None
    except json.JSONDecodeError as exc:
        raise errors.InvalidParameter(f"{src}: not valid JSON ({exc.msg})",
                                      path=str(src)) from None


def _field(doc, key, where):
    if key not in doc:
        raise errors.InvalidParameter(f"{where}: missing field {key!r}")
    return doc[key]


def measure_from_json(src) -> DiscreteMeasure:
    doc = _load(src)
    dim = int(_field(doc, "dim", "measure"))
    atoms = _field(doc, "atoms", "measure")
    try:
        raw = [(np.asarray(a["u"], dtype=float), float(a["w"])) for a in atoms]
    except (KeyError, TypeError, ValueError):
        raise errors.InvalidParameter("measure: atoms need 'u' and 'w'") from None
    return make_measure(dim, raw)


def measure_to_json(mu: DiscreteMeasure) -> dict:
    return {"dim": mu.dim,
            "atoms": [{"u": u.tolist(), "w": float(w)} for u, w in mu.atoms]}


def body_from_json(src) -> HPolytope:
    doc = _load(src)
    return make_hpolytope(int(_field(doc, "dim", "body")), _field(doc, "normals", "body"),
                          _field(doc, "supports", "body"))


def body_to_json(P: HPolytope, with_vertices=False) -> dict:
    out = {"dim": P.dim, "normals": P.normals.tolist(), "supports": P.supports.tolist()}
    if with_vertices and P.dim in (2, 3):
        out["vertices"] = vertices(P).tolist()
    return out


def setup_from_json(src, base_dir=None) -> CapacitarySetup:
    """``{"body": <file or inline body>, "p": float, "mu_p": <measure>}``.

    Relative file references resolve against ``base_dir`` (by default the
    directory of the setup file).
    """
    if base_dir is None and not isinstance(src, dict):
        base_dir = os.path.dirname(os.path.abspath(src))
    doc = _load(src)

    def ref(x):
        if isinstance(x, str) and base_dir is not None and not os.path.isabs(x):
            return os.path.join(base_dir, x)
        return x

    body = body_from_json(ref(_field(doc, "body", "setup")))
    mu = measure_from_json(ref(_field(doc, "mu_p", "setup")))
    return cp_from_measure(body, float(_field(doc, "p", "setup")), mu)


def setup_to_json(setup: CapacitarySetup) -> dict:
    return {"body": body_to_json(setup.body), "p": setup.p,
            "mu_p": measure_to_json(setup.mu_p), "cp": setup.cp}


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=True) + "\n"


def write_json(path, obj):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(obj))


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(float(x)) if isinstance(x, (float, np.floating)) else x
                    for x in row])
    return buf.getvalue()


def write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(csv_text(header, rows))


# ---------------------------------------------------------------------------
# SVG

def _polyline(pts, scale, style):
    coords = " ".join(f"{scale * x:.6f},{-scale * y:.6f}" for x, y in pts)
    return f'  <polygon points="{coords}" {style}/>\n'


def body_svg(P: HPolytope, measure: DiscreteMeasure | None = None, size=400) -> str:
    """Body outline, polar overlay and (optionally) the atoms as rays."""
    if P.dim != 2:
        raise errors.UnsupportedDimension("SVG output is 2D only", dim=P.dim)
    P = tighten(P)
    body = vertices(P)
    pol = polar_vertices(P)
    pol = pol[chain2d(pol)]
    reach = max(np.abs(body).max(), np.abs(pol).max(), 1.0) * 1.1
    scale = 0.5 * size / reach
    half = size / 2
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
             f'viewBox="{-half:.1f} {-half:.1f} {size:.1f} {size:.1f}">\n',
             _polyline(body, scale, 'fill="none" stroke="black" stroke-width="1.5"'),
             _polyline(pol, scale, 'fill="none" stroke="steelblue" stroke-dasharray="4 3"')]
    if measure is not None:
        top = measure.weights.max()
        for u, w in measure.atoms:
            r = scale * reach * 0.9 * w / top
            parts.append(f'  <line x1="0" y1="0" x2="{r * u[0]:.6f}" y2="{-r * u[1]:.6f}" '
                         'stroke="firebrick" stroke-width="1"/>\n')
    parts.append("</svg>\n")
    return "".join(parts)
