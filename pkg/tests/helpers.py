"""Sampling helpers and hypothesis strategies shared by the tests."""

import math

import numpy as np
from hypothesis import strategies as st

from zonecover.core import Cap, UnitVector, Zone


def random_unit(rng, d):
    return UnitVector.normalized(rng.standard_normal(d + 1))


def tangent_directions(center, m, rng):
    """m random unit vectors orthogonal to ``center``."""
    c = np.asarray(center)
    g = rng.standard_normal((m, len(c)))
    g -= np.outer(g @ c, c)
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def cap_points(cap, m, rng, boundary=True):
    """Points of a cap: on its boundary circle, or spread over its interior."""
    c = cap.center.array
    t = tangent_directions(c, m, rng)
    if boundary:
        ang = np.full(m, cap.radius)
    else:
        ang = cap.radius * rng.uniform(0.0, 1.0, m)
    return np.cos(ang)[:, None] * c[None, :] + np.sin(ang)[:, None] * t


def zone_points(zone, m, rng):
    """Points spread over a zone (including its boundary circles)."""
    n = zone.normal.array
    t = tangent_directions(n, m, rng)
    ang = zone.half_width * rng.uniform(-1.0, 1.0, m)
    ang[: m // 10] = zone.half_width
    return np.sin(ang)[:, None] * n[None, :] + np.cos(ang)[:, None] * t


def point_at(d, *coords):
    arr = np.zeros(d + 1)
    arr[: len(coords)] = coords
    return UnitVector.normalized(arr)


def random_zone_family(rng, d, n, total_width):
    """n zones with random normals whose widths add up to ``total_width``."""
    while True:
        widths = rng.dirichlet(np.ones(n)) * total_width
        if np.all(widths / 2 < math.pi / 2) and np.all(widths > 1e-6):
            break
    return [Zone(random_unit(rng, d), w / 2) for w in widths]


@st.composite
def unit_vectors(draw, d=2):
    coords = draw(
        st.lists(st.floats(-1.0, 1.0, allow_nan=False), min_size=d + 1, max_size=d + 1).filter(
            lambda v: math.fsum(c * c for c in v) > 1e-3
        )
    )
    return UnitVector.normalized(coords)
