"""Static SVG of an S^2 instance, orthographic view from +z.

Curves on the far hemisphere are dashed.
"""

from __future__ import annotations

import math
from typing import Iterable, Optional, Sequence

import numpy as np

from .core import Cap, GreatSphere, Zone

SIZE = 500
RADIUS = 220.0
ZONE_COLORS = ["#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22"]


def _xy(p) -> tuple[float, float]:
    return SIZE / 2 + RADIUS * float(p[0]), SIZE / 2 - RADIUS * float(p[1])


def _small_circle(axis: np.ndarray, height: float, steps: int = 240) -> np.ndarray:
    """Points p with <p, axis> = height."""
    helper = np.eye(3)[int(np.argmin(np.abs(axis)))]
    e1 = np.cross(axis, helper)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(axis, e1)
    t = np.linspace(0.0, 2.0 * math.pi, steps + 1)
    rho = math.sqrt(max(0.0, 1.0 - height * height))
    return height * axis + rho * (np.outer(np.cos(t), e1) + np.outer(np.sin(t), e2))


def _polylines(points: np.ndarray, color: str, width: float = 1.5) -> list[str]:
    out = []
    visible = points[:, 2] >= 0.0
    start = 0
    for k in range(1, len(points) + 1):
        if k == len(points) or visible[k] != visible[start]:
            run = points[start : min(k + 1, len(points))]
            if len(run) > 1:
                coords = " ".join("%.2f,%.2f" % _xy(p) for p in run)
                dash = "" if visible[start] else ' stroke-dasharray="4,3" opacity="0.6"'
                out.append(
                    f'<polyline points="{coords}" fill="none" stroke="{color}" '
                    f'stroke-width="{width}"{dash}/>'
                )
            start = k
    return out


def render_svg(
    zones: Sequence[Zone] = (),
    caps: Sequence[Cap] = (),
    great_spheres: Sequence[GreatSphere] = (),
    points: Iterable = (),
    samples: Optional[np.ndarray] = None,
    max_samples: int = 3000,
) -> str:
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<circle cx="{SIZE / 2}" cy="{SIZE / 2}" r="{RADIUS}" fill="none" stroke="black"/>',
    ]
    if samples is not None and len(samples):
        for p in np.asarray(samples)[:max_samples]:
            if p[2] >= 0.0:
                x, y = _xy(p)
                parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="1" fill="#999999"/>')
    for i, z in enumerate(zones):
        color = ZONE_COLORS[i % len(ZONE_COLORS)]
        n = z.normal.array
        s = math.sin(z.half_width)
        for sign in (1.0, -1.0):
            parts.extend(_polylines(_small_circle(sign * n, s), color))
    for g in great_spheres:
        parts.extend(_polylines(_small_circle(g.normal.array, 0.0), "#444444", 1.0))
    for c in caps:
        parts.extend(_polylines(_small_circle(c.center.array, math.cos(c.radius)), "#d62728"))
    for p in points:
        p = np.asarray(getattr(p, "array", p), dtype=float)
        x, y = _xy(p)
        fill = "#d62728" if p[2] >= 0.0 else "none"
        parts.append(
            f'<circle cx="{x:.2f}" cy="{y:.2f}" r="5" fill="{fill}" stroke="#d62728" stroke-width="2"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
