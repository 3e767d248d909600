"""Floating-point oracles that cross-check the exact routines.

Random streams come from numpy's PCG64 bit generator seeded directly by
``OracleConfig.seed``; a fixed config always yields the same numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DegenerateBoundingBox
from .polytope import AffineFunc, Polytope

PRNG_ALGORITHM = "PCG64"


@dataclass(frozen=True)
class OracleConfig:
    seed: int = 0
    samples: int = 100_000
    grid_steps: int = 1000

    def rng(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(self.seed))


@dataclass(frozen=True)
class MCResult:
    mass: float
    mass_se: float
    barycenter: np.ndarray
    barycenter_se: np.ndarray


def halfspace_arrays(P: Polytope) -> tuple[np.ndarray, np.ndarray]:
    A = np.array([[float(x) for x in f.normal] for f in P.facets])
    b = np.array([float(f.offset) for f in P.facets])
    return A, b


def affine_density(f: AffineFunc) -> Callable[[np.ndarray], np.ndarray]:
    g = np.array([float(x) for x in f.gradient])
    c = float(f.constant)
    return lambda X: X @ g + c


def min_affine_density(pieces: Sequence[AffineFunc], shift: float = 0.0):
    """Evaluator for ``shift + min(pieces)``."""
    G = np.array([[float(x) for x in g.gradient] for g in pieces])
    c = np.array([float(g.constant) for g in pieces])
    return lambda X: shift + (X @ G.T + c).min(axis=1)


def dh_density(dp) -> Callable[[np.ndarray], np.ndarray]:
    """Evaluator for ``2 + sum_y min(pieces of Psi_y)`` on a divisorial polytope."""
    parts = [min_affine_density(dp.psi[y].pieces) for y in dp.markers]
    return lambda X: 2.0 + sum((f(X) for f in parts), np.zeros(len(X)))


def mc_moments(P: Polytope, density: Callable[[np.ndarray], np.ndarray], cfg: OracleConfig) -> MCResult:
    """Rejection-sampling estimate of mass and weighted barycenter over ``P``."""
    V = np.array([[float(x) for x in v] for v in P.vertices])
    lo, hi = V.min(axis=0), V.max(axis=0)
    if np.any(hi <= lo):
        raise DegenerateBoundingBox("bounding box has zero width")
    box_vol = float(np.prod(hi - lo))
    A, b = halfspace_arrays(P)
    X = lo + (hi - lo) * cfg.rng().random((cfg.samples, P.dim))
    inside = np.all(X @ A.T <= b + 1e-12, axis=1)
    w = np.where(inside, density(X), 0.0)
    n = cfg.samples
    mass = box_vol * w.mean()
    mass_se = box_vol * w.std(ddof=1) / np.sqrt(n)
    wx = w[:, None] * X
    mean_w = w.mean()
    bc = wx.mean(axis=0) / mean_w
    # delta method for a ratio of means
    resid = wx - bc[None, :] * w[:, None]
    bc_se = resid.std(axis=0, ddof=1) / (np.sqrt(n) * mean_w)
    return MCResult(float(mass), float(mass_se), bc, bc_se)


def grid_sup_t(P: Polytope, b: Sequence, w: Sequence, cfg: OracleConfig) -> float:
    """Largest grid point ``t = i / grid_steps`` where ``f_b >= 0`` in floats."""
    V = np.array([[float(x) for x in v] for v in P.vertices])
    wf = np.array([float(x) for x in w])
    h = float((V @ wf).max())
    bw = float(np.dot([float(x) for x in b], wf))
    ts = np.linspace(0.0, 1.0, cfg.grid_steps + 1)
    vals = ts * bw + (1.0 - ts) * h
    ok = np.nonzero(vals >= 0)[0]
    return float(ts[ok[-1]]) if ok.size else 0.0
