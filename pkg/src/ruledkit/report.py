"""Analysis reports and their canonical JSON form.

Reports are plain dicts built from deterministic inputs only (no
timestamps); serialization sorts keys and renders floats with 17
significant digits, so identical analyses produce byte-identical files
and parse(serialize(report)) round-trips exactly.
"""

import json

import numpy as np
from scipy.optimize import brentq

from . import __about__
from .classify import Label, classify_developable, classify_ruled, topological_type
from .errors import OrderUndetectable, RuledKitError
from .geometry import DualInvariants, is_developable, singular_locus
from .tolerances import Tolerances


def float17(x: float) -> str:
    return format(float(x), ".17g")


def canonical_json(obj) -> str:
    """Deterministic JSON: sorted keys, floats at 17 significant digits."""
    return _render(obj, 0) + "\n"


def _render(obj, depth):
    pad = "  " * depth
    inner = "  " * (depth + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f"{inner}{json.dumps(str(k))}: {_render(obj[k], depth + 1)}"
            for k in sorted(obj, key=str)
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{inner}{_render(v, depth + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return float17(obj)
    if isinstance(obj, Label):
        return json.dumps(obj.value)
    return json.dumps(obj)


def parse_report(text: str) -> dict:
    return json.loads(text)


def _function_summary(values, grid, fn, floor=1e-11):
    """Extrema and bracketed zeros of a sampled scalar function."""
    out = {"min": float(np.min(values)), "max": float(np.max(values))}
    scale = float(np.max(np.abs(values)))
    if scale <= floor:
        out["identically_zero"] = True
        out["zeros"] = []
        return out
    out["identically_zero"] = False
    zeros = []
    tol = floor * max(1.0, scale)
    for i in range(len(grid) - 1):
        a, b = values[i], values[i + 1]
        if abs(a) <= tol:
            zeros.append(float(grid[i]))
        elif a * b < 0.0:
            zeros.append(float(brentq(fn, grid[i], grid[i + 1], xtol=1e-13)))
    if abs(values[-1]) <= tol:
        zeros.append(float(grid[-1]))
    span = float(grid[-1] - grid[0])
    merged = []
    for z in sorted(zeros):
        if not merged or z - merged[-1] > 1e-7 * span:
            merged.append(z)
    out["zeros"] = merged
    return out


def _condition_dicts(report):
    return [
        {
            "text": c.text,
            "value": float(c.value),
            "threshold": float(c.threshold),
            "verdict": bool(c.verdict),
        }
        for c in report.conditions
    ]


def _point_report(rep, curve_type=None):
    out = {
        "label": rep.label.value,
        "codimension": rep.codimension,
        "location": {"s": float(rep.location[0]), "t": float(rep.location[1])},
        "conditions": _condition_dicts(rep),
        "caveats": list(rep.caveats),
    }
    if rep.moduli:
        out["moduli"] = {k: float(v) for k, v in rep.moduli.items()}
    if curve_type is not None:
        out["curve_type"] = curve_type
    return out


def _curve_type_dict(inv_jet):
    try:
        ct = topological_type(inv_jet)
    except (OrderUndetectable, RuledKitError) as exc:
        return {"error": str(exc)}
    return {
        "m": ct.m,
        "l": ct.l,
        "r": ct.r,
        "triple": list(ct.triple),
        "determinativity": ct.determinativity,
    }


def analyze(spec, tolerances: Tolerances | None = None, order: int = 6, kappa1_shift=0.0):
    """Full analysis of a surface spec.

    Returns (report dict, exit code): 0 on success, 2 when any verdict
    is Unresolved.
    """
    tol = tolerances or Tolerances()
    curve = spec.build_curve(kappa1_shift=kappa1_shift)
    inv = DualInvariants(curve, order=order)
    grid = np.linspace(curve.interval[0], curve.interval[1], spec.samples)

    summaries = {}
    values = {}
    for name in ("kappa1", "tau0", "tau1"):
        fn = getattr(inv, name)
        vals = np.array([fn(s) for s in grid])
        values[name] = vals
        summaries[name] = _function_summary(vals, grid, fn)

    developable = is_developable(curve, tol=tol.developable)
    locus = singular_locus(curve, tol=tol.developable)

    points = []
    unresolved = False
    if locus.kind == "points":
        # the polished locus is authoritative for the kappa1 zero set
        summaries["kappa1"]["zeros"] = [float(s) for s, _ in locus.points]
        for s0, t0 in locus.points:
            rep = classify_ruled(inv.at(s0), tol=tol.cls, location=(s0, t0))
            unresolved |= rep.label is Label.UNRESOLVED
            points.append(_point_report(rep))
        locus_dict = {"kind": "points", "points": points}
    elif locus.kind == "curve":
        special = {0.0 if curve.interval[0] <= 0.0 <= curve.interval[1] else float(grid[len(grid) // 2])}
        for name in ("tau0", "tau1"):
            special.update(summaries[name]["zeros"])
        for s0 in sorted(special):
            t0 = float(locus.offset(s0))
            jet = inv.at(s0)
            rep = classify_developable(jet, tol=tol.cls, location=(s0, t0))
            unresolved |= rep.label is Label.UNRESOLVED
            points.append(_point_report(rep, curve_type=_curve_type_dict(jet)))
        locus_dict = {"kind": "curve", "points": points}
    else:
        locus_dict = {"kind": "empty", "points": []}

    report = {
        "schema_version": 1,
        "tool": {"name": "ruledkit", "version": __about__.__version__},
        "spec": {"sha256": spec.sha256(), "type": spec.kind, "name": spec.name},
        "tolerances": {
            "unit": tol.unit,
            "geo": tol.geo,
            "cyl_floor": tol.cyl_floor,
            "jet": tol.jet,
            "cls": tol.cls,
            "ode": tol.ode,
            "developable": tol.developable,
        },
        "interval": list(curve.interval),
        "samples": spec.samples,
        "kappa1_shift": float(kappa1_shift),
        "developable": bool(developable),
        "invariants": summaries,
        "singular_locus": locus_dict,
        "unresolved": bool(unresolved),
    }
    return report, (2 if unresolved else 0)
