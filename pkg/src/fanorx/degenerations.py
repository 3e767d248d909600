"""Toric degenerations of a divisorial polytope and their per-polytope analysis."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg as la
from .divisorial import GENERIC, DivisorialPolytope, Subdivision, evaluate_psi, refinement
from .errors import OriginNotInterior
from .linalg import Vec
from .polytope import Cone, Polytope, barycenter, convex_hull, normal_cone, ray_boundary_hit


def some_ray_in_H(cone: Cone) -> bool:
    """Does the cone meet the open halfspace {last coordinate > 0}?"""
    return any(r[-1] > 0 for r in cone.rays)


def all_rays_in_H(cone: Cone) -> bool:
    return bool(cone.rays) and all(r[-1] > 0 for r in cone.rays)


@dataclass(frozen=True)
class Degeneration:
    label: str
    delta: Polytope
    bc: Vec
    t_star: Fraction | None
    q: Vec | None
    sigma: Cone
    some_ray_in_H: bool
    all_rays_in_H: bool
    ratio: Fraction
    contributes: bool


def label_key(label: str) -> tuple[int, str]:
    """Sort key: markers alphabetically, the generic label last."""
    return (label == GENERIC, label)


def admissible_labels(dp: DivisorialPolytope, sub: Subdivision | None = None) -> list[str]:
    return [y for y, ok in label_admissibility(dp, sub).items() if ok]


def label_admissibility(dp: DivisorialPolytope, sub: Subdivision | None = None) -> dict[str, bool]:
    """For each candidate label, whether at most one other marker is non-integral per cell."""
    sub = sub or refinement(dp)
    out = {}
    for y in dp.markers + [GENERIC]:
        ok = True
        for cell in sub.cells:
            n = sum(
                1
                for z, g in cell.active.items()
                if z != y and not la.is_integral(g.gradient)
            )
            if n > 1:
                ok = False
                break
        out[y] = ok
    return out


def build_delta(dp: DivisorialPolytope, y: str, sub: Subdivision | None = None) -> Polytope:
    """Region between ``-1 - sum_{z != y} Psi_z`` and ``1 + Psi_y`` over the box."""
    sub = sub or refinement(dp)
    pts = []
    for u in sub.vertices:
        upper = 1 + evaluate_psi(dp, y, u)
        lower = -1 - sum((evaluate_psi(dp, z, u) for z in dp.markers if z != y), Fraction(0))
        pts.append(u + (upper,))
        pts.append(u + (lower,))
    return convex_hull(pts)


def analyze_degeneration(delta: Polytope, label: str) -> Degeneration:
    if not delta.origin_interior():
        raise OriginNotInterior(f"origin is not interior to degeneration {label!r}")
    bc = barycenter(delta)
    if la.is_zero(bc):
        return Degeneration(
            label, delta, bc, None, None, Cone(()), False, False, Fraction(1), False
        )
    t_star, q, face = ray_boundary_hit(delta, la.neg(bc))
    sigma = normal_cone(delta, face)
    some, every = some_ray_in_H(sigma), all_rays_in_H(sigma)
    return Degeneration(
        label,
        delta,
        bc,
        t_star,
        q,
        sigma,
        some,
        every,
        t_star / (1 + t_star),
        some,
    )


def degenerations_of(dp: DivisorialPolytope, sub: Subdivision | None = None) -> list[Degeneration]:
    sub = sub or refinement(dp)
    labels = sorted(admissible_labels(dp, sub), key=label_key)
    return [analyze_degeneration(build_delta(dp, y, sub), y) for y in labels]


def euclidean_ratio(q: Sequence, bc: Sequence) -> float:
    """``|q| / |q - bc|`` in floating point, for cross-checks only."""
    import math

    nq = math.sqrt(sum(float(x) ** 2 for x in q))
    nd = math.sqrt(sum((float(x) - float(y)) ** 2 for x, y in zip(q, bc)))
    return nq / nd
