"""Twisted Donaldson-Futaki evaluation and the greatest Ricci lower bound R(X).

Every ratio ``|q| / |q - b|`` is carried as ``t* / (1 + t*)`` where ``q = -t* b``;
the two agree because ``q``, the origin and ``b`` are collinear, and the second
form stays rational.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .degenerations import Degeneration, analyze_degeneration, degenerations_of, label_key
from .divisorial import (
    DivisorialPolytope,
    dh_barycenter_and_volume,
    refinement,
    validate_fano,
)
from .errors import DirectionNotInDualCone, InconsistentBarycenters, OriginNotInterior
from .linalg import Vec
from .polytope import (
    Polytope,
    barycenter,
    check_unimodular,
    convex_hull,
    ray_boundary_hit,
    support_value,
)

BASE = "BASE"
SEMISTABLE = "SEMISTABLE"


def degeneration_source(label: str) -> str:
    return f"DEGENERATION({label})"


def f_b(P: Polytope, b: Sequence, w: Sequence, t) -> Fraction:
    """``t <b, w> + (1 - t) max_{x in P} <x, w>``."""
    t = Fraction(t)
    h, _ = support_value(P, w)
    return t * la.dot(b, w) + (1 - t) * h


def sup_t_nonneg(P: Polytope, b: Sequence, w: Sequence) -> Fraction:
    """Largest ``t`` in [0, 1] with ``f_b(P, b, w, t) >= 0``."""
    bw = la.dot(b, w)
    if bw >= 0:
        return Fraction(1)
    h, _ = support_value(P, w)
    return max(Fraction(0), h / (h - bw))


@dataclass(frozen=True)
class LemmaPathInstance:
    """Path ``w(s) = s n + (1 - s) w`` of directions pairing positively with ``-b``."""

    P: Polytope
    b: Vec
    n: Vec
    w: Vec
    s: Fraction

    def direction(self, s=None) -> Vec:
        s = self.s if s is None else Fraction(s)
        return la.add(la.scale(s, self.n), la.scale(1 - s, self.w))


def lemma_ratio_path(inst: LemmaPathInstance, s=None) -> Fraction:
    ws = inst.direction(s)
    bw = la.dot(inst.b, ws)
    if bw >= 0:
        raise DirectionNotInDualCone(f"w(s) pairs non-positively with -b at s={s}")
    h, _ = support_value(inst.P, ws)
    return h / (h - bw)


def df_t_product(box: Polytope, bc_nu: Sequence, w: Sequence, t) -> Fraction:
    return f_b(box, bc_nu, w, t)


def df_t_nonproduct(delta: Polytope, v_prime: Sequence, t, bc: Sequence | None = None) -> Fraction:
    return f_b(delta, barycenter(delta) if bc is None else bc, v_prime, t)


def base_ratio(box: Polytope, bc_nu: Sequence) -> Fraction:
    if not box.origin_interior():
        raise OriginNotInterior("origin is not interior to the box")
    if la.is_zero(bc_nu):
        return Fraction(1)
    t_star, _, _ = ray_boundary_hit(box, la.neg(bc_nu))
    return t_star / (1 + t_star)


@dataclass(frozen=True)
class RxInput:
    """Either a divisorial polytope, or a box with explicitly listed degenerations."""

    box: Polytope
    divisorial: DivisorialPolytope | None = None
    dh_barycenter: Vec | None = None
    deltas: tuple[tuple[str, tuple[Vec, ...]], ...] = ()
    name: str = ""

    @property
    def mode(self) -> str:
        return "divisorial" if self.divisorial is not None else "degenerations"

    @classmethod
    def from_divisorial(cls, dp: DivisorialPolytope, name: str = "") -> "RxInput":
        return cls(dp.box, divisorial=dp, name=name)

    def transformed(self, U: Sequence[Sequence]) -> "RxInput":
        """Image under ``U`` on the box and ``U + 1`` on every degeneration."""
        U = check_unimodular(U)
        if self.divisorial is not None:
            return RxInput.from_divisorial(self.divisorial.transformed(U), self.name)
        box = convex_hull(la.mat_vec(U, v) for v in self.box.vertices)
        bc = None if self.dh_barycenter is None else la.mat_vec(U, self.dh_barycenter)
        deltas = tuple(
            (lab, tuple(la.mat_vec(U, v[:-1]) + (v[-1],) for v in verts))
            for lab, verts in self.deltas
        )
        return RxInput(box, None, bc, deltas, self.name)


@dataclass
class RxReport:
    bc_nu: Vec
    base_ratio: Fraction
    degenerations: list[Degeneration]
    R: Fraction
    R_source: str
    dh_volume: Fraction | None = None
    validation: list[str] = field(default_factory=list)


def compute_R(inp: RxInput) -> RxReport:
    box = inp.box
    if not box.origin_interior():
        raise OriginNotInterior("origin is not interior to the box")
    dh_volume = None
    validation: list[str] = []
    if inp.divisorial is not None:
        dp = inp.divisorial
        sub = refinement(dp)
        dh = dh_barycenter_and_volume(dp, sub)
        bc_nu, dh_volume = dh.barycenter, dh.volume
        degs = degenerations_of(dp, sub)
        for g in degs:
            if g.bc[:-1] != bc_nu:
                raise InconsistentBarycenters(
                    f"degeneration {g.label!r} projects to {g.bc[:-1]}, not {bc_nu}"
                )
        validation = validate_fano(dp, sub).lines()
    else:
        degs = sorted(
            (analyze_degeneration(convex_hull(verts), lab) for lab, verts in inp.deltas),
            key=lambda g: label_key(g.label),
        )
        projected = {g.bc[:-1] for g in degs}
        if inp.dh_barycenter is not None:
            projected.add(tuple(Fraction(x) for x in inp.dh_barycenter))
        if not projected:
            raise InconsistentBarycenters("no barycenter given and no degenerations to derive one")
        if len(projected) > 1:
            raise InconsistentBarycenters(f"barycenters disagree: {sorted(projected)}")
        (bc_nu,) = projected
        for g in degs:
            if not convex_hull(v[:-1] for v in g.delta.vertices).same_set(box):
                validation.append(f"degeneration {g.label!r} does not project onto the box")

    base = base_ratio(box, bc_nu)
    if la.is_zero(bc_nu):
        return RxReport(bc_nu, base, degs, Fraction(1), SEMISTABLE, dh_volume, validation)
    R, source = base, BASE
    for g in degs:
        if g.contributes and g.ratio < R:
            R, source = g.ratio, degeneration_source(g.label)
    return RxReport(bc_nu, base, degs, R, source, dh_volume, validation)
