"""Fit quality measures: point deviation, spline errors, compression ratio."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bezier_core import CubicBezier, Point2, evaluate
from .errors import ConsistencyError, DomainError

_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass
class FitReport:
    """Summary of one fit: size, accuracy, and storage efficiency."""

    n_points: int
    n_segments: int
    max_dev: float
    avg_error: float
    compression_ratio: float
    wall_time: float | None = None


def compression_ratio(n_points: int, n_segments: int) -> float:
    """Contour points per fitted segment."""
    if n_segments < 1:
        raise DomainError("need at least one segment")
    return n_points / n_segments


def _curve_table(c: CubicBezier, samples: int) -> tuple[list[float], list[float]]:
    xs = []
    ys = []
    p0, p1, p2, p3 = c
    for i in range(samples + 1):
        u = i / samples
        v = 1.0 - u
        b0 = v * v * v
        b1 = 3.0 * u * v * v
        b2 = 3.0 * u * u * v
        b3 = u * u * u
        xs.append(b0 * p0.x + b1 * p1.x + b2 * p2.x + b3 * p3.x)
        ys.append(b0 * p0.y + b1 * p1.y + b2 * p2.y + b3 * p3.y)
    return xs, ys


def _d2_at(c: CubicBezier, p: Point2, u: float) -> float:
    q = evaluate(c, u)
    return (q.x - p.x) ** 2 + (q.y - p.y) ** 2


def _refine(c: CubicBezier, p: Point2, lo: float, hi: float, coarse: float) -> float:
    """Golden-section minimum of squared distance over [lo, hi]."""
    a, b = lo, hi
    x1 = b - _INV_GOLDEN * (b - a)
    x2 = a + _INV_GOLDEN * (b - a)
    f1 = _d2_at(c, p, x1)
    f2 = _d2_at(c, p, x2)
    best = min(coarse, f1, f2)
    for _ in range(60):
        if b - a < 1e-12:
            break
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INV_GOLDEN * (b - a)
            f1 = _d2_at(c, p, x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INV_GOLDEN * (b - a)
            f2 = _d2_at(c, p, x2)
        if f1 < best:
            best = f1
        if f2 < best:
            best = f2
    return best


def curve_distances(pts: list[Point2], c: CubicBezier,
                    samples: int | None = None) -> list[float]:
    """Distance of every point in pts to the curve, sharing one sample grid.

    The grid has max(256, 4 * len(pts)) uniform parameters unless an
    explicit count is given; each point's nearest grid sample seeds a local
    golden-section refinement.
    """
    n = max(256, 4 * len(pts)) if samples is None else max(1, samples)
    xs, ys = _curve_table(c, n)
    out = []
    for p in pts:
        px, py = p.x, p.y
        best_i = 0
        best = (xs[0] - px) ** 2 + (ys[0] - py) ** 2
        for i in range(1, n + 1):
            d2 = (xs[i] - px) ** 2 + (ys[i] - py) ** 2
            if d2 < best:
                best = d2
                best_i = i
        lo = (best_i - 1) / n if best_i > 0 else 0.0
        hi = (best_i + 1) / n if best_i < n else 1.0
        out.append(math.sqrt(_refine(c, p, lo, hi, best)))
    return out


def point_deviation(p: Point2, c: CubicBezier, samples: int = 256) -> float:
    """Minimum distance from p to the curve (sampling plus refinement)."""
    return curve_distances([p], c, samples=max(256, samples))[0]


def spline_errors(contour, spline) -> tuple[float, float]:
    """Max and mean distance of every contour point to its own segment.

    Each segment owns the contour points from its span start up to but not
    including the span end (the shared break point belongs to the next
    segment), so every point is measured exactly once.
    """
    n = contour.n
    owner_count = 0
    seen = [False] * n
    max_dev = 0.0
    total = 0.0
    for seg in spline.segments:
        a, b = seg.span
        m = (b - a) % n + 1
        indices = [(a + k) % n for k in range(m - 1)]
        for idx in indices:
            if seen[idx]:
                raise ConsistencyError(f"contour point {idx} covered twice")
            seen[idx] = True
        owner_count += len(indices)
        pts = [contour.points[idx] for idx in indices]
        for d in curve_distances(pts, seg.curve, samples=max(256, 4 * m)):
            total += d
            if d > max_dev:
                max_dev = d
    if owner_count != n:
        raise ConsistencyError(
            f"segments cover {owner_count} of {n} contour points")
    return max_dev, total / n


def fit_report(loops: list[tuple], wall_time: float | None = None) -> FitReport:
    """Aggregate report over (contour, spline) pairs of one image."""
    n_points = 0
    n_segments = 0
    max_dev = 0.0
    error_sum = 0.0
    for contour, spline in loops:
        mx, avg = spline_errors(contour, spline)
        n_points += contour.n
        n_segments += len(spline.segments)
        error_sum += avg * contour.n
        if mx > max_dev:
            max_dev = mx
    return FitReport(
        n_points=n_points,
        n_segments=n_segments,
        max_dev=max_dev,
        avg_error=error_sum / n_points if n_points else 0.0,
        compression_ratio=compression_ratio(n_points, n_segments),
        wall_time=wall_time,
    )
