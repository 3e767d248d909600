"""Command line entry point: ``fanorx {validate,degenerations,compute-r} FILE``.

Exit status is 0 on success, 2 when the input is well-formed but fails a
geometric or Fano check, and 1 on I/O or schema problems.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import linalg as la
from .degenerations import analyze_degeneration, build_delta, label_admissibility, label_key
from .divisorial import refinement, validate_fano
from .engine import compute_R
from .errors import GeometryError, InputError, UnsupportedDimension
from .formats import ReportDocument, parse_input, serialize_report, to_rx_input
from .polytope import convex_hull, ray_boundary_hit
from .svg import emit_svg


def _load(path: str):
    data = Path(path).read_bytes()
    return parse_input(data)


def _fmt_vec(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def cmd_validate(args, out) -> int:
    doc = _load(args.file)
    inp = to_rx_input(doc)
    if inp.divisorial is not None:
        rep = validate_fano(inp.divisorial)
        lines, ok = rep.lines(), rep.ok
    else:
        lines = []
        if not inp.box.origin_interior():
            lines.append("violation (a) origin is not an interior point of the box")
        for lab, verts in inp.deltas:
            try:
                delta = convex_hull(verts)
            except GeometryError as e:
                lines.append(f"violation degeneration {lab!r}: {e}")
                continue
            if not delta.origin_interior():
                lines.append(f"violation degeneration {lab!r}: origin is not interior")
            if not convex_hull(v[:-1] for v in delta.vertices).same_set(inp.box):
                lines.append(f"violation degeneration {lab!r} does not project onto the box")
        ok = not lines
    for line in lines:
        print(line, file=out)
    print(f"{doc.name}: {'valid' if ok else 'INVALID'}", file=out)
    return 0 if ok else 2


def cmd_degenerations(args, out) -> int:
    doc = _load(args.file)
    inp = to_rx_input(doc)
    if inp.divisorial is not None:
        dp = inp.divisorial
        sub = refinement(dp)
        for lab, ok in sorted(label_admissibility(dp, sub).items(), key=lambda kv: label_key(kv[0])):
            if not ok:
                print(f"{lab}: not admissible", file=out)
                continue
            g = analyze_degeneration(build_delta(dp, lab, sub), lab)
            print(_describe(g), file=out)
    else:
        for lab, verts in sorted(inp.deltas, key=lambda d: label_key(d[0])):
            print(_describe(analyze_degeneration(convex_hull(verts), lab)), file=out)
    return 0


def _describe(g) -> str:
    if g.q is None:
        return f"{g.label}: admissible bc={_fmt_vec(g.bc)} ratio=1 contributes=no"
    rays = " ".join(_fmt_vec(r) for r in g.sigma.rays)
    return (
        f"{g.label}: admissible bc={_fmt_vec(g.bc)} t*={g.t_star} q={_fmt_vec(g.q)} "
        f"sigma=[{rays}] some_in_H={'yes' if g.some_ray_in_H else 'no'} "
        f"all_in_H={'yes' if g.all_rays_in_H else 'no'} ratio={g.ratio} "
        f"contributes={'yes' if g.contributes else 'no'}"
    )


def cmd_compute_r(args, out) -> int:
    doc = _load(args.file)
    inp = to_rx_input(doc)
    rep = compute_R(inp)
    rdoc = ReportDocument.from_report(doc.name, rep)
    if args.json:
        out.write(serialize_report(rdoc))
    else:
        print(f"R(X) = {rep.R}", file=out)
        print(f"source: {rep.R_source}", file=out)
        print(f"bc_nu = {_fmt_vec(rep.bc_nu)}  base ratio = {rep.base_ratio}", file=out)
    if args.svg:
        q = None
        if not la.is_zero(rep.bc_nu):
            _, q, _ = ray_boundary_hit(inp.box, la.neg(rep.bc_nu))
        Path(args.svg).write_bytes(emit_svg(inp.box, rep.bc_nu, q))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fanorx", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("validate", help="check divisorial/Fano conditions")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)
    p = sub.add_parser("degenerations", help="list degeneration labels and their analysis")
    p.add_argument("file")
    p.set_defaults(func=cmd_degenerations)
    p = sub.add_parser("compute-r", help="compute the greatest Ricci lower bound")
    p.add_argument("file")
    p.add_argument("--json", action="store_true", help="print the full report as JSON")
    p.add_argument("--svg", metavar="OUT", help="write a diagram of a 2-dimensional box")
    p.set_defaults(func=cmd_compute_r)
    return parser


def run_cli(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (OSError, InputError, UnsupportedDimension) as e:
        print(f"error: {e}", file=err)
        return 1
    except GeometryError as e:
        print(f"violation: {type(e).__name__}: {e}", file=err)
        return 2


def main() -> None:
    sys.exit(run_cli())
