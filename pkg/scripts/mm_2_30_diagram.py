"""Print the intermediate quantities for threefold 2.30 and draw its box."""

import argparse
from pathlib import Path

from fanorx import linalg as la
from fanorx.engine import compute_R
from fanorx.formats import parse_input, to_rx_input
from fanorx.polytope import ray_boundary_hit
from fanorx.svg import emit_svg

ROOT = Path(__file__).resolve().parents[1]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fixture", default=ROOT / "fixtures" / "mm_2_30.json", type=Path)
    ap.add_argument("--out", default=Path("mm_2_30.svg"), type=Path)
    args = ap.parse_args()

    inp = to_rx_input(parse_input(args.fixture.read_bytes()))
    rep = compute_R(inp)
    _, q, face = ray_boundary_hit(inp.box, la.neg(rep.bc_nu))
    print(f"bc_nu        = {tuple(map(str, rep.bc_nu))}")
    print(f"boundary hit = {tuple(map(str, q))} on facet(s) {[f.normal for f in face.facets]}")
    print(f"base ratio   = {rep.base_ratio}")
    for g in rep.degenerations:
        print(f"Delta_{g.label}: bc = {tuple(map(str, g.bc))}, t* = {g.t_star}, "
              f"sigma = {g.sigma.rays}, ratio = {g.ratio}, contributes = {g.contributes}")
    print(f"R(X) = {rep.R}  ({rep.R_source})")
    args.out.write_bytes(emit_svg(inp.box, rep.bc_nu, q))
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
