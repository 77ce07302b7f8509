"""Coverage oracles that do not depend on the refutation machinery.

Three deciders of different strength:

* ``verify_covering`` classifies an explicit point set (evidence only);
* ``exact_cover_circle`` decides coverage of S^1 by an endpoint sweep;
* ``arrangement_candidates_s2`` builds a finite point set on S^2 that the
  union of zones misses whenever it misses anything (up to tangencies).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .core import (
    DEFAULT_TOL,
    Cap,
    PointLike,
    UnitVector,
    Zone,
    as_array,
    check_dimensions,
    stack,
)
from .errors import DimensionMismatch, WrongDimension

ARRANGEMENT_OFFSET = 1e-5
MAX_UNCOVERED = 1000
_CHUNK = 20000
_TANGENT_TOL = 1e-14
_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


class Method(enum.Enum):
    SAMPLING = "sampling"
    EXACT_CIRCLE = "exact-circle"
    ARRANGEMENT_S2 = "arrangement-s2"


@dataclass(frozen=True, eq=False)
class CoverageReport:
    total_samples: int
    uncovered: np.ndarray
    min_margin: float
    method: Method
    # ExactCircle only: uncovered arcs of the line circle R/piZ as (start, end)
    gaps: tuple[tuple[float, float], ...] = field(default=())

    @property
    def covered(self) -> bool:
        return len(self.uncovered) == 0


def fibonacci_sphere(count: int) -> np.ndarray:
    i = np.arange(count, dtype=float)
    z = 1.0 - (2.0 * i + 1.0) / count
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    phi = i * _GOLDEN_ANGLE
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def sample_sphere(d: int, count: int, seed: int = 0) -> np.ndarray:
    """``count`` unit vectors on S^d as rows of an array.

    Deterministic grids for d = 1 (equal angles) and d = 2 (Fibonacci
    lattice); seeded normalized Gaussians otherwise.
    """
    if d < 1 or count < 1:
        raise ValueError("need d >= 1 and count >= 1")
    if d == 1:
        t = 2.0 * math.pi * np.arange(count) / count
        return np.column_stack([np.cos(t), np.sin(t)])
    if d == 2:
        return fibonacci_sphere(count)
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((count, d + 1))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def _as_points(samples) -> np.ndarray:
    if isinstance(samples, np.ndarray):
        return np.atleast_2d(np.asarray(samples, dtype=float))
    return stack(samples)


def verify_covering(
    zones: Sequence[Zone],
    samples,
    tol: float = DEFAULT_TOL,
    max_uncovered: int = MAX_UNCOVERED,
    method: Method = Method.SAMPLING,
) -> CoverageReport:
    """Classify every sample against the zones.

    A sample is uncovered when it is strictly outside every zone at ``tol``
    (``|<p, n_i>| > sin(a_i) + tol`` for all i).  ``min_margin`` is the
    largest, over samples, of the smallest signed distance to a zone.
    """
    check_dimensions(zones)
    pts = _as_points(samples)
    normals = stack(z.normal for z in zones)
    if pts.shape[1] != normals.shape[1]:
        raise DimensionMismatch(
            f"samples have {pts.shape[1]} coordinates, zones {normals.shape[1]}"
        )
    sines = np.sin([z.half_width for z in zones])
    hw = np.array([z.half_width for z in zones])

    uncovered = []
    kept = 0
    best = -math.inf
    for start in range(0, len(pts), _CHUNK):
        chunk = pts[start : start + _CHUNK]
        t = np.abs(chunk @ normals.T)
        outside = np.all(t > sines + tol, axis=1)
        if kept < max_uncovered and outside.any():
            hits = chunk[outside][: max_uncovered - kept]
            uncovered.append(hits)
            kept += len(hits)
        # signed distance to zone i, computed as atan2 to stay accurate near the poles
        perp = np.sqrt(np.clip(1.0 - t * t, 0.0, None))
        margin = (np.arctan2(t, perp) - hw).min(axis=1)
        best = max(best, float(margin.max()))
    found = np.vstack(uncovered) if uncovered else np.zeros((0, pts.shape[1]))
    return CoverageReport(len(pts), found, best, method)


def _line_intervals(zones: Sequence[Zone]) -> list[tuple[float, float]]:
    """Each zone on S^1 as a closed interval of the circle of lines R/piZ.

    The zone with normal at angle phi covers the directions within a of
    phi + pi/2 (and their antipodes, which are the same lines).
    """
    out = []
    for z in zones:
        x, y = z.normal.coords
        center = (math.atan2(y, x) + math.pi / 2) % math.pi
        out.append(((center - z.half_width) % math.pi, 2.0 * z.half_width))
    return out


def exact_cover_circle(zones: Sequence[Zone], tol: float = DEFAULT_TOL) -> CoverageReport:
    """Decide whether zones cover S^1 by sweeping arc endpoints.

    Uncovered points returned are the midpoints of every uncovered gap, both
    antipodal copies.  ``min_margin`` is half the largest gap when something
    is uncovered, else minus half the thinnest overlap between neighbours.
    """
    if check_dimensions(zones) != 1:
        raise WrongDimension("exact_cover_circle needs zones on S^1")
    L = math.pi
    intervals = sorted(_line_intervals(zones))
    s0, len0 = intervals[0]
    # intervals wrapping past L reach back over s0 and continue from there
    reach = max([s0 + len0] + [s + ln - L for s, ln in intervals])
    gaps = []
    overlaps = []
    for s, ln in intervals[1:]:
        if s > reach:
            gaps.append((reach, s))
        else:
            overlaps.append(reach - s)
        reach = max(reach, s + ln)
    if reach < s0 + L:
        gaps.append((reach, s0 + L))
    else:
        overlaps.append(reach - (s0 + L))

    real_gaps = [(a, b) for a, b in gaps if b - a > 2.0 * tol]
    if real_gaps:
        margin = max(b - a for a, b in real_gaps) / 2.0
    else:
        thinnest = min(overlaps + [-(b - a) for a, b in gaps]) if (overlaps or gaps) else L
        margin = -thinnest / 2.0
    points = []
    for a, b in real_gaps:
        t = (a + b) / 2.0
        points.append((math.cos(t), math.sin(t)))
        points.append((-math.cos(t), -math.sin(t)))
    found = np.array(points, dtype=float).reshape(-1, 2)
    norm_gaps = tuple((a % L, a % L + (b - a)) for a, b in real_gaps)
    return CoverageReport(len(intervals), found, margin, Method.EXACT_CIRCLE, norm_gaps)


def _circle_intersections(a, ha, b, hb):
    """Points p on S^2 with <p, a> = ha and <p, b> = hb."""
    g = float(a @ b)
    det = 1.0 - g * g
    if det < 1e-14:
        return []
    c1 = (ha - g * hb) / det
    c2 = (hb - g * ha) / det
    base = c1 * a + c2 * b
    cross = np.cross(a, b)
    rem = 1.0 - float(base @ base)
    # rounding-level remainders are tangencies; sqrt would blow them up to ~1e-8
    if rem < -_TANGENT_TOL:
        return []
    if rem <= _TANGENT_TOL:
        return [base]
    t = math.sqrt(rem / float(cross @ cross))
    return [base + t * cross, base - t * cross]


def _outward_tangent(p, n):
    """Unit tangent at p pointing to increasing <., n> (away from the zone interior)."""
    v = n - float(p @ n) * p
    nv = np.linalg.norm(v)
    return v / nv if nv > 0 else v


def _unit(v):
    return v / np.linalg.norm(v)


def arrangement_candidates_s2(zones: Sequence[Zone]) -> np.ndarray:
    """Candidate points that decide coverage of S^2 by the union of zones.

    Every pair of boundary circles contributes its intersection points and,
    around each, one point in each of the four sectors cut out by the two
    circles.  Every boundary circle also contributes a point on it and a point
    just outside its zone, for uncovered regions bounded by a single circle.
    """
    if check_dimensions(zones) != 2:
        raise WrongDimension("arrangement_candidates_s2 needs zones on S^2")
    eps = ARRANGEMENT_OFFSET
    circles = []
    for z in zones:
        n = z.normal.array
        s = math.sin(z.half_width)
        circles.append((n, s))
        circles.append((-n, s))

    pts = []
    for i in range(len(circles)):
        n, s = circles[i]
        helper = np.eye(3)[int(np.argmin(np.abs(n)))]
        e = _unit(np.cross(n, helper))
        on = s * n + math.sqrt(1.0 - s * s) * e
        pts.append(on)
        pts.append(_unit(on + eps * _outward_tangent(on, n)))
        for j in range(i + 1, len(circles)):
            m, r = circles[j]
            for p in _circle_intersections(n, s, m, r):
                p = _unit(p)
                pts.append(p)
                ta = _unit(np.cross(n, p))
                tb = _unit(np.cross(m, p))
                for sa in (1.0, -1.0):
                    for sb in (1.0, -1.0):
                        step = sa * ta + sb * tb
                        # tangent circles: the two sector directions collapse
                        if np.linalg.norm(step) < 1e-9:
                            continue
                        pts.append(_unit(p + eps * _unit(step)))
    return np.array(pts)


def brute_force_min_cap(caps: Sequence[Cap], grid: int = 20000) -> Cap:
    """Best covering cap over a Fibonacci grid of candidate centers (S^2 only)."""
    if check_dimensions(caps) != 2:
        raise WrongDimension("brute_force_min_cap is an S^2 oracle")
    if grid < 100:
        raise ValueError("grid must be at least 100")
    cand = fibonacci_sphere(grid)
    centers = stack(c.center for c in caps)
    radii = np.array([c.radius for c in caps])
    dots = np.clip(cand @ centers.T, -1.0, 1.0)
    need = (np.arccos(dots) + radii).max(axis=1)
    k = int(np.argmin(need))
    return Cap(UnitVector.normalized(cand[k]), float(min(need[k], math.pi)))


def grid_resolution(grid: int) -> float:
    """Rough spacing of a Fibonacci grid of ``grid`` points, in radians."""
    return math.sqrt(4.0 * math.pi / grid)


def classify_points(
    zones: Sequence[Zone], points: Iterable[PointLike], tol: float = DEFAULT_TOL
) -> list[bool]:
    """For each point, True iff it is strictly outside every zone."""
    pts = [as_array(p) for p in points]
    if not pts:
        return []
    normals = stack(z.normal for z in zones)
    sines = np.sin([z.half_width for z in zones])
    t = np.abs(np.vstack(pts) @ normals.T)
    return [bool(x) for x in np.all(t > sines + tol, axis=1)]
