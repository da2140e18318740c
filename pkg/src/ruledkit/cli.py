"""Command-line front end.

Subcommands: analyze (invariants, singular locus, classification),
mesh (OBJ export), reconstruct (Frenet integration from a prescription),
gallery (write the spec reproducing a classification label).

Exit codes: 0 success, 1 input error, 2 analysis finished with
Unresolved labels, 3 I/O error.  RULEDKIT_TOL overrides the default
classification tolerance.
"""

import argparse
import json
import sys

import numpy as np

from .errors import RuledKitError, SpecError
from .geometry import DualFrame, DualInvariants, striction
from .mesh import write_obj
from .report import analyze, canonical_json
from .specfile import SurfaceSpec, gallery_spec_text
from .tolerances import default_tolerances


def _parse_grid(text):
    try:
        ns, nt = text.lower().split("x")
        return int(ns), int(nt)
    except ValueError:
        raise SpecError(f"--grid expects NSxNT, got {text!r}") from None


def _parse_range(text):
    try:
        a, b = text.split(":")
        return float(a), float(b)
    except ValueError:
        raise SpecError(f"--t-range expects a:b, got {text!r}") from None


def cmd_analyze(args) -> int:
    spec = SurfaceSpec.from_file(args.spec)
    tol = default_tolerances()
    if args.tol is not None:
        tol = tol.with_classification_tol(args.tol)
    report, code = analyze(spec, tolerances=tol, order=args.order, kappa1_shift=args.shift)
    text = canonical_json(report)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text)
    return code


def cmd_mesh(args) -> int:
    spec = SurfaceSpec.from_file(args.spec)
    curve = spec.build_curve(kappa1_shift=args.shift)
    ns, nt = _parse_grid(args.grid)
    nv, nf = write_obj(args.output, curve, ns, nt, _parse_range(args.t_range))
    print(f"wrote {args.output}: {nv} vertices, {nf} triangles")
    return 0


def cmd_reconstruct(args) -> int:
    spec = SurfaceSpec.from_file(args.spec)
    if spec.kind != "prescription":
        raise SpecError("reconstruct needs a prescription-type spec")
    if args.step is not None:
        spec.step = args.step
    curve = spec.build_curve()
    if args.init != "identity":
        with open(args.init, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        frame = DualFrame.from_array(
            np.concatenate([np.asarray(data[k], dtype=float)
                            for k in ("v0", "v1", "n0", "n1", "t0", "t1")]),
            tol=1e-8,
        )
        curve = type(curve)(curve.prescription, frame, interval=curve.interval,
                            step=curve.step, s_init=curve.s_init)

    inv = DualInvariants(curve, order=2)
    sig = striction(curve, order=1)
    grid = np.linspace(curve.interval[0], curve.interval[1], spec.samples)
    csv_path = args.output + ".csv"
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write("s,x,y,z,kappa1,tau0,tau1\n")
        for s in grid:
            p = sig(s)
            jet = inv.at(s)
            fh.write(
                f"{s:.17g},{p[0]:.17g},{p[1]:.17g},{p[2]:.17g},"
                f"{jet.kappa1[0]:.17g},{jet.tau0[0]:.17g},{jet.tau1[0]:.17g}\n"
            )
    ns, nt = _parse_grid(args.grid)
    obj_path = args.output + ".obj"
    nv, nf = write_obj(obj_path, curve, ns, nt, _parse_range(args.t_range))
    residual = curve.invariant_roundtrip_error()
    defect = curve.orthonormality_defect()
    print(f"wrote {csv_path} ({spec.samples} rows) and {obj_path} ({nv} vertices, {nf} triangles)")
    print(f"invariant roundtrip residual: {residual:.3e}; frame defect: {defect:.3e}")
    return 0


def cmd_gallery(args) -> int:
    text = gallery_spec_text(args.label)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.output}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ruledkit",
        description="Ruled and developable surfaces: invariants, singularities, reconstruction",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="invariants, singular locus, classification")
    p.add_argument("spec")
    p.add_argument("--json", metavar="FILE", help="also write the JSON report to FILE")
    p.add_argument("--tol", type=float, help="classification tolerance override")
    p.add_argument("--order", type=int, default=6, help="invariant jet order (default 6)")
    p.add_argument("--lambda", dest="shift", type=float, default=0.0,
                   help="kappa1 shift for prescription-backed surfaces")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("mesh", help="sample F(s,t) and write an OBJ mesh")
    p.add_argument("spec")
    p.add_argument("--grid", required=True, help="NSxNT sample counts")
    p.add_argument("--t-range", required=True, help="ruling parameter range a:b")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--lambda", dest="shift", type=float, default=0.0,
                   help="kappa1 shift for prescription-backed surfaces")
    p.set_defaults(fn=cmd_mesh)

    p = sub.add_parser("reconstruct", help="integrate a prescription into a surface")
    p.add_argument("spec", help="prescription-type spec file")
    p.add_argument("--init", default="identity",
                   help="'identity' or a JSON file with v0,v1,n0,n1,t0,t1")
    p.add_argument("--step", type=float, help="integration step override")
    p.add_argument("--grid", default="65x9")
    p.add_argument("--t-range", default="-1:1")
    p.add_argument("-o", "--output", required=True, help="output prefix (.csv/.obj)")
    p.set_defaults(fn=cmd_reconstruct)

    p = sub.add_parser("gallery", help="write the spec for a classification label")
    p.add_argument("--label", required=True)
    p.add_argument("-o", "--output", required=True, help="output file or '-'")
    p.set_defaults(fn=cmd_gallery)
    return parser


_VALUE_FLAGS = {"--t-range", "--lambda", "--tol", "--step", "--grid", "--order"}


def _merge_flag_values(argv):
    """Join '--flag -value' into '--flag=-value' so negative values work."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_merge_flag_values(list(argv)))
    try:
        return args.fn(args)
    except (SpecError, RuledKitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
