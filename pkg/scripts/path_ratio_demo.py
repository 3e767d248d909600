"""Ratio along the path w(s) = s*n + (1-s)*w for seeded random instances.

The ratio h/(h - <b, w(s)>) should decrease strictly in s when n is the normal
of the facet hit by the ray from b through the origin.
"""

import argparse
import random
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from fanorx import linalg as la  # noqa: E402
from fanorx.engine import LemmaPathInstance, base_ratio, lemma_ratio_path  # noqa: E402
from generators import random_direction, random_wedge_polytope  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=5)
    ap.add_argument("--dim", type=int, default=3)
    ap.add_argument("--steps", type=int, default=10)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    for i in range(args.count):
        P, b, _, facet = random_wedge_polytope(rng, args.dim)
        n = tuple(Fraction(x) for x in facet.normal)
        while True:
            w = random_direction(rng, args.dim)
            if la.dot(w, la.neg(b)) > 0 and la.rank([w, n]) == 2:
                break
        inst = LemmaPathInstance(P, b, n, w, Fraction(0))
        vals = [lemma_ratio_path(inst, Fraction(k, args.steps)) for k in range(args.steps + 1)]
        dec = all(a > c for a, c in zip(vals, vals[1:]))
        print(f"instance {i}: {len(P.vertices)} vertices, base ratio {base_ratio(P, b)}, "
              f"strictly decreasing: {dec}")
        print("   " + "  ".join(f"{float(v):.4f}" for v in vals))


if __name__ == "__main__":
    main()
