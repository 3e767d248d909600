"""Divisorial polytopes: concave piecewise-affine coefficient functions on a box.

The Duistermaat-Heckman density used throughout is ``deg Psi + 2``: this is
the length of the fiber of every toric degeneration over ``u``, and it is the
choice under which degeneration barycenters project onto the box barycenter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

from . import linalg as la
from .errors import ZeroVolume
from .linalg import Vec
from .polytope import (
    AffineFunc,
    Polytope,
    check_unimodular,
    convex_hull,
    moments_affine_density,
    vertex_enumeration,
)

GENERIC = "generic"


@dataclass(frozen=True)
class PiecewiseAffine:
    """Minimum of finitely many affine functions."""

    pieces: tuple[AffineFunc, ...]

    def __post_init__(self):
        if not self.pieces:
            raise ValueError("need at least one affine piece")
        # identical pieces would produce duplicate refinement cells
        uniq = tuple(dict.fromkeys(self.pieces))
        object.__setattr__(self, "pieces", uniq)

    def __call__(self, u: Sequence) -> Fraction:
        return min(g(u) for g in self.pieces)


@dataclass(frozen=True)
class DivisorialPolytope:
    box: Polytope
    psi: Mapping[str, PiecewiseAffine] = field(default_factory=dict)

    def __post_init__(self):
        if GENERIC in self.psi:
            raise ValueError(f"marker label {GENERIC!r} is reserved")
        for y, f in self.psi.items():
            for g in f.pieces:
                if len(g.gradient) != self.box.dim:
                    raise ValueError(f"piece of marker {y!r} has wrong dimension")

    @property
    def dim(self) -> int:
        return self.box.dim

    @property
    def markers(self) -> list[str]:
        return sorted(self.psi)

    def degree(self, u: Sequence) -> Fraction:
        return sum((f(u) for f in self.psi.values()), Fraction(0))

    def transformed(self, U: Sequence[Sequence]) -> "DivisorialPolytope":
        """Image under ``u -> U u``; gradients pick up ``U^{-T}``."""
        U = check_unimodular(U)
        inv_t = la.transpose(la.inverse(U))
        box = convex_hull(la.mat_vec(U, v) for v in self.box.vertices)
        psi = {
            y: PiecewiseAffine(
                tuple(AffineFunc(la.mat_vec(inv_t, g.gradient), g.constant) for g in f.pieces)
            )
            for y, f in self.psi.items()
        }
        return DivisorialPolytope(box, psi)


def evaluate_psi(dp: DivisorialPolytope, marker: str, u: Sequence) -> Fraction:
    f = dp.psi.get(marker)
    return Fraction(0) if f is None else f(u)


@dataclass(frozen=True)
class Cell:
    polytope: Polytope
    active: Mapping[str, AffineFunc]
    degree: AffineFunc


@dataclass(frozen=True)
class Subdivision:
    cells: tuple[Cell, ...]
    vertices: tuple[Vec, ...]


def refinement(dp: DivisorialPolytope) -> Subdivision:
    """Common refinement of the box by the linearity regions of every marker."""
    d = dp.dim
    markers = dp.markers
    box_hs = [(f.normal, f.offset) for f in dp.box.facets]
    cells = []
    choices = [range(len(dp.psi[y].pieces)) for y in markers]
    for pick in product(*choices):
        hs = list(box_hs)
        for y, k in zip(markers, pick):
            pieces = dp.psi[y].pieces
            g = pieces[k]
            for j, h in enumerate(pieces):
                if j != k:
                    diff = g - h  # g <= h
                    hs.append((diff.gradient, -diff.constant))
        verts = vertex_enumeration(hs)
        if len(verts) < d + 1 or la.affine_rank(verts) < d:
            continue
        active = {y: dp.psi[y].pieces[k] for y, k in zip(markers, pick)}
        deg = AffineFunc.const(0, d)
        for g in active.values():
            deg = deg + g
        cells.append(Cell(convex_hull(verts), active, deg))
    allv = sorted({v for c in cells for v in c.polytope.vertices})
    return Subdivision(tuple(cells), tuple(allv))


@dataclass(frozen=True)
class DHResult:
    volume: Fraction
    barycenter: Vec


def dh_barycenter_and_volume(dp: DivisorialPolytope, sub: Subdivision | None = None) -> DHResult:
    sub = sub or refinement(dp)
    d = dp.dim
    two = AffineFunc.const(2, d)
    volume = Fraction(0)
    moment = tuple(Fraction(0) for _ in range(d))
    for cell in sub.cells:
        mass, mom = moments_affine_density(cell.polytope, cell.degree + two)
        volume += mass
        moment = la.add(moment, mom)
    if volume == 0:
        raise ZeroVolume("Duistermaat-Heckman volume vanishes")
    return DHResult(volume, la.scale(1 / volume, moment))


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        return [f"violation {v}" for v in self.violations] + [f"warning {w}" for w in self.warnings]


def validate_fano(dp: DivisorialPolytope, sub: Subdivision | None = None) -> ValidationReport:
    """Check the divisorial and Fano conditions; every check reports on its own."""
    rep = ValidationReport()
    box = dp.box
    sub = sub or refinement(dp)

    # (a)
    if not box.origin_interior():
        rep.violations.append("(a) origin is not an interior point of the box")
    bad = [v for v in box.vertices if not la.is_integral(v)]
    if bad:
        rep.violations.append(f"(a) box vertices are not lattice points: {_fmt_pts(bad)}")

    # (b)
    for y in dp.markers:
        bad = [v for v in sub.vertices if dp.psi[y](v).denominator != 1]
        if bad:
            rep.violations.append(
                f"(b) Psi_{y} is not integral at subdivision vertices {_fmt_pts(bad)}"
            )

    # (c) concavity reduces interior positivity to the vertices
    degs = [dp.degree(v) + 2 for v in sub.vertices]
    if any(x < 0 for x in degs):
        rep.violations.append("(c) deg Psi < -2 at some subdivision vertex")
    elif all(x == 0 for x in degs):
        rep.violations.append("(c) deg Psi is identically -2")

    # (d) advisory
    for y in dp.markers:
        for g in dp.psi[y].pieces:
            if g.constant == -1:
                rep.warnings.append(f"(d) piece {_fmt_aff(g)} of Psi_{y}: 1 + const = 0")
                continue
            beta = 1 / (1 + g.constant)
            if beta.denominator != 1 or beta <= 0:
                rep.warnings.append(
                    f"(d) piece {_fmt_aff(g)} of Psi_{y}: beta = {beta} is not a positive integer"
                )
            elif not la.is_primitive(la.scale(beta, g.gradient)):
                rep.warnings.append(
                    f"(d) piece {_fmt_aff(g)} of Psi_{y}: beta*gradient is not primitive"
                )

    # (e)
    for f in box.facets:
        on = [v for v in sub.vertices if f.is_tight(v)]
        if all(dp.degree(v) == -2 for v in on):
            continue
        if f.offset != 1:
            rep.violations.append(
                f"(e) facet {f.normal} <= {f.offset} has lattice distance {f.offset} != 1"
            )
    return rep


def _fmt_pts(pts) -> str:
    return ", ".join("(" + ",".join(str(x) for x in p) + ")" for p in pts)


def _fmt_aff(g: AffineFunc) -> str:
    return "<(" + ",".join(str(x) for x in g.gradient) + "),u> + " + str(g.constant)
