"""Anchor-node trilateration from RSS-derived ranges."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .channel import Position2D, RadioConfig, rss_to_distance
from .errors import AmbiguousGeometry, InsufficientAnchors, InvalidRange

COLLINEAR_TOL = 1e-9


@dataclass(frozen=True)
class ApConstellation:
    """Known AP positions; at least three, not all on one line."""

    positions: tuple[Position2D, ...]

    def __post_init__(self):
        pos = tuple(p if isinstance(p, Position2D) else Position2D(*p) for p in self.positions)
        object.__setattr__(self, "positions", pos)
        if len(pos) < 3:
            raise InsufficientAnchors(f"need at least 3 APs, got {len(pos)}")
        pts = self.as_array()
        span2 = max(float(np.sum((a - b) ** 2)) for a, b in itertools.combinations(pts, 2))
        area = max(_triangle_area(a, b, c) for a, b, c in itertools.combinations(pts, 3))
        if span2 == 0 or area < COLLINEAR_TOL * span2:
            raise AmbiguousGeometry("AP constellation is collinear")

    def __len__(self):
        return len(self.positions)

    def as_array(self) -> np.ndarray:
        return np.array([[p.x, p.y] for p in self.positions], dtype=float)

    @classmethod
    def ring(cls, center: Position2D, radius: float, bearings_deg: Sequence[float]) -> "ApConstellation":
        """APs on a circle of ``radius`` around ``center`` at the given bearings."""
        return cls(tuple(
            Position2D(center.x + radius * math.cos(math.radians(b)), center.y + radius * math.sin(math.radians(b)))
            for b in bearings_deg
        ))


def _triangle_area(a, b, c) -> float:
    return 0.5 * abs((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]))


@dataclass(frozen=True)
class LocalizationFix:
    position: Position2D
    residual_norm: float


def _residuals(p, anchors, d):
    return np.linalg.norm(anchors - p, axis=1) - d


def _linear_solve(anchors, d):
    # Subtract the first range equation from the rest: linear in (x, y).
    a = 2.0 * (anchors[1:] - anchors[0])
    b = (np.sum(anchors[1:] ** 2, axis=1) - np.sum(anchors[0] ** 2)) - d[1:] ** 2 + d[0] ** 2
    sol, _, rank, _ = np.linalg.lstsq(a, b, rcond=None)
    return sol if rank == 2 else None


def _grid_refine(anchors, d, levels=6, steps=41):
    lo, hi = anchors.min(axis=0) - d.max(), anchors.max(axis=0) + d.max()
    center, half = (lo + hi) / 2, (hi - lo) / 2
    for _ in range(levels):
        xs = np.linspace(center[0] - half[0], center[0] + half[0], steps)
        ys = np.linspace(center[1] - half[1], center[1] + half[1], steps)
        gx, gy = np.meshgrid(xs, ys)
        pts = np.stack([gx.ravel(), gy.ravel()], axis=1)
        cost = np.sum((np.linalg.norm(pts[:, None, :] - anchors[None], axis=2) - d) ** 2, axis=1)
        center = pts[np.argmin(cost)]
        half = half * 4.0 / (steps - 1)
    return center


def _gauss_newton(p, anchors, d, iters=50):
    for _ in range(iters):
        diff = p - anchors
        rng = np.linalg.norm(diff, axis=1)
        if np.any(rng == 0):
            break
        jac = diff / rng[:, None]
        step, *_ = np.linalg.lstsq(jac, -(rng - d), rcond=None)
        p = p + step
        if np.linalg.norm(step) < 1e-13 * (1.0 + np.linalg.norm(p)):
            break
    return p


def trilaterate(constellation: ApConstellation, distances: Sequence[float]) -> LocalizationFix:
    """Least-squares position from ranges to every AP.

    The linearized system (first equation subtracted from the others) gives a
    closed-form start, polished by Gauss-Newton on the range residuals
    ``||p - p_i|| - d_i``. A coarse-to-fine grid search replaces the linear
    start if that system is rank deficient.
    """
    anchors = constellation.as_array()
    d = np.asarray(distances, dtype=float)
    if d.shape != (len(anchors),):
        raise InvalidRange(f"expected {len(anchors)} distances, got {d.size}")
    if not np.all(d > 0):
        raise InvalidRange("all distances must be > 0")
    start = _linear_solve(anchors, d)
    if start is None:
        start = _grid_refine(anchors, d)
    p = _gauss_newton(start, anchors, d)
    res = float(np.linalg.norm(_residuals(p, anchors, d)))
    return LocalizationFix(Position2D(float(p[0]), float(p[1])), res)


def localize_anchor(constellation: ApConstellation, observed_rss: Sequence[float], cfg: RadioConfig) -> LocalizationFix:
    return trilaterate(constellation, [rss_to_distance(r, cfg) for r in observed_rss])
