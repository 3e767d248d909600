"""Exact rational convex polytopes.

Hulls and vertex enumeration both go through one double-description routine
(:func:`extreme_rays`) working on integer rows, so every facet normal and every
vertex is exact. Target dimensions are small (at most 5), which keeps the
combinatorial adjacency test cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import factorial, gcd
from typing import Iterable, Sequence

from . import linalg as la
from .errors import (
    DimensionMismatch,
    EmptyInput,
    FaceNotInPolytope,
    NotFullDimensional,
    NotUnimodular,
    OriginNotInterior,
    UnboundedDirection,
)
from .linalg import Vec


@dataclass(frozen=True, order=True)
class Halfspace:
    """The set ``{x : <normal, x> <= offset}`` with a primitive integer normal."""

    normal: tuple[int, ...]
    offset: Fraction

    def value(self, x: Sequence) -> Fraction:
        return la.dot(self.normal, x)

    def contains(self, x: Sequence) -> bool:
        return self.value(x) <= self.offset

    def is_tight(self, x: Sequence) -> bool:
        return self.value(x) == self.offset


@dataclass(frozen=True)
class AffineFunc:
    """``u -> <gradient, u> + constant``."""

    gradient: Vec
    constant: Fraction

    def __call__(self, u: Sequence) -> Fraction:
        return la.dot(self.gradient, u) + self.constant

    @classmethod
    def const(cls, c, dim: int) -> "AffineFunc":
        return cls(tuple(Fraction(0) for _ in range(dim)), Fraction(c))

    def __add__(self, other: "AffineFunc") -> "AffineFunc":
        return AffineFunc(la.add(self.gradient, other.gradient), self.constant + other.constant)

    def __sub__(self, other: "AffineFunc") -> "AffineFunc":
        return AffineFunc(la.sub(self.gradient, other.gradient), self.constant - other.constant)


@dataclass(frozen=True)
class Cone:
    """Polyhedral cone given by primitive integer generators."""

    rays: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Simplex:
    vertices: tuple[Vec, ...]

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def signed_volume(self) -> Fraction:
        v0 = self.vertices[0]
        return la.det([la.sub(v, v0) for v in self.vertices[1:]]) / factorial(self.dim)

    def volume(self) -> Fraction:
        return abs(self.signed_volume())


@dataclass(frozen=True)
class Face:
    """A face, recorded both by its vertices and by the facets containing it."""

    vertices: tuple[Vec, ...]
    facets: tuple[Halfspace, ...]


# --- double description ---------------------------------------------------


def _dd_initial(rows: list[tuple[int, ...]], m: int) -> tuple[list[int], list[tuple[int, ...]]]:
    basis: list[int] = []
    chosen: list[tuple[int, ...]] = []
    for i, r in enumerate(rows):
        if la.rank(chosen + [r]) > len(chosen):
            basis.append(i)
            chosen.append(r)
            if len(chosen) == m:
                break
    if len(chosen) < m:
        raise NotFullDimensional("constraint system does not define a pointed cone")
    inv = la.inverse(chosen)
    rays = [la.integer_scaled([inv[i][j] for i in range(m)]) for j in range(m)]
    return basis, rays


def extreme_rays(rows: Sequence[Sequence]) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone ``{y : <a, y> >= 0 for a in rows}``.

    Rows may be rational; they are rescaled to integers. Rays come back as
    primitive integer vectors. Raises ``NotFullDimensional`` if the rows do
    not have full column rank (the cone would not be pointed).
    """
    irows = [la.integer_scaled(r) for r in rows]
    irows = [r for r in irows if any(r)]
    if not irows:
        raise NotFullDimensional("no constraints")
    m = len(irows[0])
    basis, rays = _dd_initial(irows, m)

    def ev(r, y):
        return sum(a * b for a, b in zip(r, y))

    done = list(basis)
    # zero sets as bitmasks over row indices processed so far
    zeros = []
    for y in rays:
        zeros.append(sum(1 << i for i in done if ev(irows[i], y) == 0))

    for k in range(len(irows)):
        if k in basis:
            continue
        a = irows[k]
        vals = [ev(a, y) for y in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        new_rays = [rays[i] for i in pos + zer]
        new_zeros = [zeros[i] for i in pos] + [zeros[i] | (1 << k) for i in zer]
        for p in pos:
            for n in neg:
                common = zeros[p] & zeros[n]
                if bin(common).count("1") < m - 2:
                    continue
                if any(
                    t != p and t != n and (common & zeros[t]) == common
                    for t in range(len(rays))
                ):
                    continue
                y = tuple(vals[p] * ni - vals[n] * pi for pi, ni in zip(rays[p], rays[n]))
                new_rays.append(la.integer_scaled(y))
                new_zeros.append(common | (1 << k))
        rays, zeros = new_rays, new_zeros
        done.append(k)
    return sorted(set(rays))


# --- polytope --------------------------------------------------------------


def _dedupe(points: Iterable[Sequence]) -> list[Vec]:
    seen = {}
    for p in points:
        v = la.vec(p)
        seen.setdefault(v, None)
    return list(seen)


@dataclass(frozen=True)
class Polytope:
    """Full-dimensional polytope carrying both its V- and H-representation.

    Build one with :func:`convex_hull` or :func:`from_halfspaces`; the plain
    constructor trusts its arguments.
    """

    dim: int
    vertices: tuple[Vec, ...]
    facets: tuple[Halfspace, ...]

    @cached_property
    def incidence(self) -> tuple[frozenset[int], ...]:
        """For each facet, the indices of the vertices lying on it."""
        return tuple(
            frozenset(i for i, v in enumerate(self.vertices) if f.is_tight(v)) for f in self.facets
        )

    def contains(self, x: Sequence) -> bool:
        return all(f.contains(x) for f in self.facets)

    def contains_strictly(self, x: Sequence) -> bool:
        return all(f.value(x) < f.offset for f in self.facets)

    def origin_interior(self) -> bool:
        return all(f.offset > 0 for f in self.facets)

    def tight_facets(self, x: Sequence) -> tuple[Halfspace, ...]:
        return tuple(f for f in self.facets if f.is_tight(x))

    @cached_property
    def volume(self) -> Fraction:
        return sum((s.volume() for s in triangulate(self)), Fraction(0))

    def same_set(self, other: "Polytope") -> bool:
        return self.dim == other.dim and set(self.vertices) == set(other.vertices)


def _check_dim(points: Sequence[Sequence]) -> int:
    d = len(points[0])
    if any(len(p) != d for p in points):
        raise DimensionMismatch("points of differing dimension")
    if d == 0:
        raise NotFullDimensional("zero-dimensional ambient space")
    return d


def convex_hull(points: Iterable[Sequence]) -> Polytope:
    pts = _dedupe(points)
    if not pts:
        raise EmptyInput("no points")
    d = _check_dim(pts)
    if la.affine_rank(pts) < d:
        raise NotFullDimensional(f"points span less than {d} dimensions")
    # a facet (a, b) satisfies b - <a, p> >= 0 for every point p
    rows = [tuple(-x for x in p) + (Fraction(1),) for p in pts]
    facets = set()
    for ray in extreme_rays(rows):
        a, b = ray[:-1], ray[-1]
        if not any(a):
            continue
        g = gcd(*a)
        facets.add(Halfspace(tuple(x // g for x in a), Fraction(b, g)))
    facets_t = tuple(sorted(facets))
    verts = []
    for p in pts:
        tight = [f.normal for f in facets_t if f.is_tight(p)]
        if len(tight) >= d and la.rank(tight) == d:
            verts.append(p)
    return Polytope(d, tuple(sorted(verts)), facets_t)


def vertex_enumeration(halfspaces: Sequence[tuple[Sequence, Fraction]]) -> list[Vec]:
    """Vertices of the bounded polyhedron ``{x : <a, x> <= b}``.

    Returns ``[]`` for an empty polyhedron. Raises ``UnboundedDirection`` if
    the polyhedron is unbounded.
    """
    d = len(halfspaces[0][0])
    rows = [tuple(-Fraction(x) for x in a) + (Fraction(b),) for a, b in halfspaces]
    rows.append(tuple(Fraction(0) for _ in range(d)) + (Fraction(1),))
    out = []
    for ray in extreme_rays(rows):
        lam = ray[-1]
        if lam == 0:
            raise UnboundedDirection("polyhedron is unbounded")
        out.append(tuple(Fraction(x, lam) for x in ray[:-1]))
    return sorted(out)


def from_halfspaces(halfspaces: Sequence[tuple[Sequence, Fraction]]) -> Polytope:
    verts = vertex_enumeration(halfspaces)
    if not verts:
        raise EmptyInput("empty intersection")
    return convex_hull(verts)


def support_value(P: Polytope, w: Sequence) -> tuple[Fraction, Face]:
    if len(w) != P.dim:
        raise DimensionMismatch("direction dimension")
    vals = [la.dot(v, w) for v in P.vertices]
    best = max(vals)
    verts = tuple(v for v, x in zip(P.vertices, vals) if x == best)
    return best, face_of(P, verts)


def face_of(P: Polytope, points: Sequence[Sequence]) -> Face:
    """Minimal face of ``P`` containing every point in ``points``."""
    if not points:
        raise FaceNotInPolytope("empty face")
    for p in points:
        if len(p) != P.dim:
            raise DimensionMismatch("point dimension")
        if not P.contains(p):
            raise FaceNotInPolytope(f"{p} lies outside the polytope")
    idx = [i for i, f in enumerate(P.facets) if all(f.is_tight(p) for p in points)]
    facets = tuple(P.facets[i] for i in idx)
    if idx:
        common = frozenset.intersection(*(P.incidence[i] for i in idx))
        verts = tuple(P.vertices[i] for i in sorted(common))
    else:
        verts = P.vertices
    return Face(verts, facets)


def ray_boundary_hit(P: Polytope, direction: Sequence) -> tuple[Fraction, Vec, Face]:
    """Where the ray from the origin along ``direction`` leaves ``P``."""
    if len(direction) != P.dim:
        raise DimensionMismatch("direction dimension")
    if not P.origin_interior():
        raise OriginNotInterior("origin is not strictly interior")
    if la.is_zero(direction):
        raise UnboundedDirection("zero direction")
    ts = [f.offset / den for f in P.facets if (den := la.dot(f.normal, direction)) > 0]
    if not ts:
        raise UnboundedDirection("ray never leaves the polytope")
    t_star = min(ts)
    point = la.scale(t_star, la.vec(direction))
    return t_star, point, face_of(P, [point])


def normal_cone(P: Polytope, face: Face | Sequence[Sequence]) -> Cone:
    """Cone of outer normals at a face, generated by its facet normals."""
    if not isinstance(face, Face):
        face = face_of(P, list(face))
    elif any(f not in P.facets for f in face.facets):
        raise FaceNotInPolytope("face facets do not belong to the polytope")
    return Cone(tuple(f.normal for f in face.facets))


# --- triangulation and moments ---------------------------------------------


def triangulate(P: Polytope, order: Sequence[int] | None = None) -> list[Simplex]:
    """Pulling triangulation.

    ``order`` ranks vertex indices for apex choice; distinct orders generally
    give distinct triangulations of the same polytope.
    """
    n = len(P.vertices)
    prio = {v: i for i, v in enumerate(order if order is not None else range(n))}
    rank_cache: dict[frozenset[int], int] = {}

    def arank(s: frozenset[int]) -> int:
        if s not in rank_cache:
            rank_cache[s] = la.affine_rank([P.vertices[i] for i in sorted(s)])
        return rank_cache[s]

    def rec(face: frozenset[int], fdim: int) -> list[tuple[int, ...]]:
        if len(face) == fdim + 1:
            return [tuple(sorted(face))]
        apex = min(face, key=lambda i: prio.get(i, n + i))
        subs = set()
        for inc in P.incidence:
            s = face & inc
            if apex not in s and len(s) >= fdim and arank(s) == fdim - 1:
                subs.add(s)
        out = []
        for s in sorted(subs, key=sorted):
            for simp in rec(s, fdim - 1):
                out.append((apex,) + simp)
        return out

    cells = rec(frozenset(range(n)), P.dim)
    return [Simplex(tuple(P.vertices[i] for i in c)) for c in cells]


def simplex_moments(s: Simplex, f: AffineFunc) -> tuple[Fraction, Vec]:
    """Exact ``(integral of f, integral of x*f)`` over a simplex."""
    d = s.dim
    vol = s.volume()
    fv = [f(v) for v in s.vertices]
    mass = vol * sum(fv, Fraction(0)) / (d + 1)
    # sum_ij v_i f_j (1 + delta_ij) * vol / ((d+1)(d+2))
    vsum = [sum((v[k] for v in s.vertices), Fraction(0)) for k in range(d)]
    fsum = sum(fv, Fraction(0))
    coeff = vol / ((d + 1) * (d + 2))
    moment = tuple(
        coeff * (vsum[k] * fsum + sum((v[k] * fj for v, fj in zip(s.vertices, fv)), Fraction(0)))
        for k in range(d)
    )
    return mass, moment


def moments_affine_density(
    P: Polytope, f: AffineFunc, simplices: Sequence[Simplex] | None = None
) -> tuple[Fraction, Vec]:
    if len(f.gradient) != P.dim:
        raise DimensionMismatch("density dimension")
    mass = Fraction(0)
    moment = tuple(Fraction(0) for _ in range(P.dim))
    for s in simplices if simplices is not None else triangulate(P):
        m, mom = simplex_moments(s, f)
        mass += m
        moment = la.add(moment, mom)
    return mass, moment


def barycenter(P: Polytope) -> Vec:
    mass, moment = moments_affine_density(P, AffineFunc.const(1, P.dim))
    return la.scale(1 / mass, moment)


# --- maps --------------------------------------------------------------------


def project_drop_last(P: Polytope) -> Polytope:
    if P.dim < 2:
        raise DimensionMismatch("need dimension >= 2 to project")
    return convex_hull(v[:-1] for v in P.vertices)


def check_unimodular(U: Sequence[Sequence]) -> list[list[int]]:
    n = len(U)
    if any(len(r) != n for r in U):
        raise NotUnimodular("matrix is not square")
    if not all(Fraction(x).denominator == 1 for r in U for x in r):
        raise NotUnimodular("matrix is not integral")
    if abs(la.det(U)) != 1:
        raise NotUnimodular("determinant is not +-1")
    return [[int(x) for x in r] for r in U]


def apply_unimodular(P: Polytope, U: Sequence[Sequence]) -> Polytope:
    U = check_unimodular(U)
    if len(U) != P.dim:
        raise DimensionMismatch("matrix size")
    inv_t = la.transpose(la.inverse(U))
    verts = tuple(sorted(la.mat_vec(U, v) for v in P.vertices))
    # <n, x> <= b  becomes  <U^{-T} n, U x> <= b; U^{-T} is integral and unimodular
    facets = tuple(
        sorted(
            Halfspace(tuple(int(x) for x in la.mat_vec(inv_t, f.normal)), f.offset)
            for f in P.facets
        )
    )
    return Polytope(P.dim, verts, facets)


def random_unimodular(rng, n: int, steps: int = 6) -> list[list[int]]:
    """Product of random elementary integer matrices and a signed permutation."""
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        if n == 1:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]
    perm = list(range(n))
    rng.shuffle(perm)
    signs = [rng.choice([-1, 1]) for _ in range(n)]
    return [[signs[i] * x for x in U[perm[i]]] for i in range(n)]


def is_simplex(P: Polytope) -> bool:
    return len(P.vertices) == P.dim + 1


__all__ = [
    "AffineFunc",
    "Cone",
    "Face",
    "Halfspace",
    "Polytope",
    "Simplex",
    "apply_unimodular",
    "barycenter",
    "convex_hull",
    "extreme_rays",
    "face_of",
    "from_halfspaces",
    "moments_affine_density",
    "normal_cone",
    "project_drop_last",
    "ray_boundary_hit",
    "support_value",
    "triangulate",
    "vertex_enumeration",
]
