"""Seeded random instances and brute-force oracles for the test suite.

The brute-force routines deliberately avoid the library's double-description
code so they can be used to check it.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from fanorx import linalg as la
from fanorx.divisorial import DivisorialPolytope, PiecewiseAffine, refinement
from fanorx.errors import NotFullDimensional
from fanorx.polytope import AffineFunc, convex_hull, ray_boundary_hit

F = Fraction


def brute_force_facets(points):
    """All (primitive normal, offset) facets of the hull, by testing every d-subset."""
    pts = [la.vec(p) for p in set(map(tuple, points))]
    d = len(pts[0])
    found = set()
    for sub in combinations(pts, d):
        diffs = [la.sub(p, sub[0]) for p in sub[1:]]
        # normal spans the null space of the differences
        if d == 1:
            normals = [(F(1),)]
        else:
            if la.rank(diffs) < d - 1:
                continue
            normals = [_null_vector(diffs, d)]
        for n in normals:
            for sign in (1, -1):
                nn = la.integer_scaled(la.scale(sign, n))
                off = la.dot(nn, sub[0])
                vals = [la.dot(nn, p) for p in pts]
                if all(v <= off for v in vals):
                    found.add((nn, off))
    return found


def _null_vector(rows, d):
    # cofactor expansion: component i = (-1)^i det(rows with column i removed)
    return tuple(
        (-1) ** i * la.det([[r[j] for j in range(d) if j != i] for r in rows]) for i in range(d)
    )


def rand_frac(rng: random.Random, lo: int, hi: int, dens=(1, 2, 3, 4)) -> Fraction:
    q = rng.choice(dens)
    return F(rng.randint(lo * q, hi * q), q)


def random_points(rng: random.Random, d: int, n: int, lo=-5, hi=5, rational=True):
    return [
        tuple(rand_frac(rng, lo, hi) if rational else F(rng.randint(lo, hi)) for _ in range(d))
        for _ in range(n)
    ]


def random_polytope(rng: random.Random, d: int, n: int | None = None, lo=-5, hi=5, rational=True, origin=True):
    """Random full-dimensional hull, optionally with the origin strictly inside."""
    while True:
        pts = random_points(rng, d, n or rng.randint(d + 2, d + 6), lo, hi, rational)
        try:
            P = convex_hull(pts)
        except NotFullDimensional:
            continue
        if not origin or P.origin_interior():
            return P, pts


def random_interior_point(rng: random.Random, P, shrink=(1, 9)):
    """Strictly interior, nonzero point: shrunken positive combination of vertices."""
    while True:
        ws = [F(rng.randint(1, 5)) for _ in P.vertices]
        tot = sum(ws)
        c = tuple(sum(w * v[k] for w, v in zip(ws, P.vertices)) / tot for k in range(P.dim))
        lam = F(rng.randint(*shrink), 10)
        b = la.scale(lam, c)
        if not la.is_zero(b) and P.contains_strictly(b):
            return b


def random_wedge_polytope(rng: random.Random, d: int):
    """Random polytope plus interior b whose ray hit lies inside a single facet."""
    while True:
        P, _ = random_polytope(rng, d)
        b = random_interior_point(rng, P)
        _, q, face = ray_boundary_hit(P, la.neg(b))
        if len(face.facets) == 1:
            return P, b, q, face.facets[0]


def random_pwa(rng: random.Random, d: int, k: int, const_lo=F(-1, 4)):
    pieces = []
    for _ in range(k):
        grad = tuple(rand_frac(rng, -1, 1, dens=(1, 2)) for _ in range(d))
        c = max(const_lo, rand_frac(rng, -1, 1, dens=(1, 2, 4)))
        pieces.append(AffineFunc(grad, c))
    return PiecewiseAffine(tuple(pieces))


def random_box(rng: random.Random, d: int):
    if d == 1:
        return convex_hull([(F(-rng.randint(1, 3)),), (F(rng.randint(1, 3)),)])
    P, _ = random_polytope(rng, d, lo=-3, hi=3, rational=False)
    return P


def random_dp(rng: random.Random, d: int, max_markers: int = 3, max_pieces: int = 3):
    """Random divisorial polytope with deg Psi > -2 inside and 0 interior to every Delta_y."""
    while True:
        box = random_box(rng, d)
        names = ["0", "1", "inf"][: rng.randint(1, max_markers)]
        psi = {y: random_pwa(rng, d, rng.randint(1, max_pieces)) for y in names}
        dp = DivisorialPolytope(box, psi)
        sub = refinement(dp)
        degs = [dp.degree(v) for v in sub.vertices]
        if all(x >= -2 for x in degs) and any(x > -2 for x in degs):
            return dp


def random_direction(rng: random.Random, d: int, lo=-4, hi=4):
    while True:
        w = tuple(F(rng.randint(lo, hi)) for _ in range(d))
        if not la.is_zero(w):
            return w


def symmetric_delta(rng: random.Random, d: int):
    """Random polytope in dimension d+1, symmetric under r -> -r, origin inside."""
    while True:
        pts = []
        for _ in range(rng.randint(d + 2, d + 5)):
            u = tuple(F(rng.randint(-3, 3)) for _ in range(d))
            r = F(0) if rng.random() < 0.4 else F(rng.randint(1, 3))
            pts += [u + (r,), u + (-r,)]
        try:
            P = convex_hull(pts)
        except NotFullDimensional:
            continue
        if P.origin_interior():
            return P
