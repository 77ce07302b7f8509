"""Spherical primitives: unit vectors, zones, caps and their projective duality.

Points of S^d are stored as d+1 float coordinates.  A zone is the closed set
``{p : |<p, n>| <= sin(half_width)}`` and a cap the closed set
``{p : <p, c> >= cos(radius)}``; every membership test below works with these
inner-product forms and never goes through arccos.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import DimensionMismatch, InvalidGeometry

DEFAULT_TOL = 1e-9
NORM_TOL = 1e-12
HALF_PI = math.pi / 2


class Membership(enum.Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class UnitVector:
    """A point of S^d, also used as a great-sphere normal or a cap center."""

    coords: tuple[float, ...]

    def __post_init__(self):
        coords = tuple(float(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        if len(coords) < 2:
            raise InvalidGeometry("a unit vector needs at least 2 coordinates")
        if not all(math.isfinite(c) for c in coords):
            raise InvalidGeometry(f"non-finite coordinates {coords}")
        norm = math.sqrt(math.fsum(c * c for c in coords))
        if abs(norm - 1.0) > NORM_TOL:
            raise InvalidGeometry(f"norm {norm!r} differs from 1 by more than {NORM_TOL}")

    @classmethod
    def normalized(cls, coords: Iterable[float]) -> "UnitVector":
        arr = np.asarray(list(coords), dtype=float)
        norm = float(np.linalg.norm(arr))
        if not norm > 0.0 or not math.isfinite(norm):
            raise InvalidGeometry("cannot normalize a zero or non-finite vector")
        return cls(tuple(arr / norm))

    @classmethod
    def basis(cls, dimension: int, axis: int) -> "UnitVector":
        """The coordinate vector e_axis on S^dimension (axis is 0-based)."""
        coords = [0.0] * (dimension + 1)
        coords[axis] = 1.0
        return cls(tuple(coords))

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.coords, dtype=float)
        arr.setflags(write=False)
        return arr

    @property
    def dimension(self) -> int:
        """The sphere dimension d (one less than the coordinate count)."""
        return len(self.coords) - 1

    def __neg__(self) -> "UnitVector":
        return UnitVector(tuple(-c for c in self.coords))

    def __len__(self) -> int:
        return len(self.coords)


PointLike = Union[UnitVector, Sequence[float], np.ndarray]


def as_array(p: PointLike) -> np.ndarray:
    if isinstance(p, UnitVector):
        return p.array
    return np.asarray(p, dtype=float)


def _check_angle(value: float, name: str) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise InvalidGeometry(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class Zone:
    """Points within ``half_width`` of the great sphere orthogonal to ``normal``.

    The zone is the same set for ``normal`` and ``-normal``; the stored sign
    only selects which of the two dual caps :func:`dualize_zone` returns.
    """

    normal: UnitVector
    half_width: float

    def __post_init__(self):
        hw = _check_angle(self.half_width, "half_width")
        object.__setattr__(self, "half_width", hw)
        if not 0.0 < hw < HALF_PI:
            raise InvalidGeometry(f"zone half_width must lie in (0, pi/2), got {hw!r}")

    @classmethod
    def from_width(cls, normal: UnitVector, width: float) -> "Zone":
        return cls(normal, width / 2.0)

    @property
    def width(self) -> float:
        return 2.0 * self.half_width

    @property
    def dimension(self) -> int:
        return self.normal.dimension

    @property
    def weight(self) -> float:
        return math.sin(self.half_width)

    def flipped(self) -> "Zone":
        return Zone(-self.normal, self.half_width)


@dataclass(frozen=True)
class GreatSphere:
    """A great sphere, i.e. a zone of half-width 0."""

    normal: UnitVector

    half_width = 0.0

    @property
    def dimension(self) -> int:
        return self.normal.dimension


@dataclass(frozen=True)
class Cap:
    """Points within spherical distance ``radius`` of ``center``.

    Radii up to pi are accepted for membership; duality and merging insist on
    radius <= pi/2 themselves.
    """

    center: UnitVector
    radius: float

    def __post_init__(self):
        r = _check_angle(self.radius, "radius")
        object.__setattr__(self, "radius", r)
        if not 0.0 < r <= math.pi:
            raise InvalidGeometry(f"cap radius must lie in (0, pi], got {r!r}")

    @property
    def dimension(self) -> int:
        return self.center.dimension

    @property
    def weight(self) -> float:
        return math.sin(self.radius)


@dataclass(frozen=True)
class WeightedNormal:
    """``weight * direction`` with weight the sine of a half-width or radius."""

    direction: UnitVector
    weight: float

    def __post_init__(self):
        w = float(self.weight)
        object.__setattr__(self, "weight", w)
        if not 0.0 < w <= 1.0:
            raise InvalidGeometry(f"weight must lie in (0, 1], got {w!r}")

    @classmethod
    def of(cls, shape: Union[Zone, Cap]) -> "WeightedNormal":
        if isinstance(shape, Zone):
            return cls(shape.normal, math.sin(shape.half_width))
        return cls(shape.center, math.sin(shape.radius))

    @cached_property
    def vector(self) -> np.ndarray:
        v = self.weight * self.direction.array
        v.setflags(write=False)
        return v


def _same_dimension(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape[-1] != b.shape[-1]:
        raise DimensionMismatch(f"coordinate counts differ: {a.shape[-1]} vs {b.shape[-1]}")


def vector_angle(a: np.ndarray, b: np.ndarray) -> float:
    """Angle between two nonzero vectors, accurate near 0 and pi."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    _same_dimension(a, b)
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        raise InvalidGeometry("angle with a zero vector is undefined")
    ua = a / na
    ub = b / nb
    return float(2.0 * math.atan2(np.linalg.norm(ua - ub), np.linalg.norm(ua + ub)))


def angular_distance(p: PointLike, q: PointLike) -> float:
    """Spherical distance between two points, in [0, pi]."""
    a = as_array(p)
    b = as_array(q)
    _same_dimension(a, b)
    return float(2.0 * math.atan2(np.linalg.norm(a - b), np.linalg.norm(a + b)))


def distance_to_great_sphere(p: PointLike, normal: PointLike) -> float:
    """Spherical distance from ``p`` to the great sphere orthogonal to ``normal``.

    Equals ``arcsin(|<p, normal>|)`` but stays accurate near pi/2.
    """
    a = as_array(p)
    n = as_array(normal)
    _same_dimension(a, n)
    t = float(a @ n)
    return math.atan2(abs(t), float(np.linalg.norm(a - t * n)))


def zone_clearance(zone: Zone, p: PointLike) -> float:
    """Signed distance from ``p`` to ``zone``: positive outside, negative inside."""
    return distance_to_great_sphere(p, zone.normal) - zone.half_width


def _classify(value: float, threshold: float, tol: float) -> Membership:
    # ``value`` grows towards the outside of the region
    if value < threshold - tol:
        return Membership.INSIDE
    if value > threshold + tol:
        return Membership.OUTSIDE
    return Membership.BOUNDARY


def zone_membership(zone: Zone, p: PointLike, tol: float = DEFAULT_TOL) -> Membership:
    a = as_array(p)
    _same_dimension(a, zone.normal.array)
    return _classify(abs(float(a @ zone.normal.array)), math.sin(zone.half_width), tol)


def cap_membership(cap: Cap, p: PointLike, tol: float = DEFAULT_TOL) -> Membership:
    a = as_array(p)
    _same_dimension(a, cap.center.array)
    return _classify(-float(a @ cap.center.array), -math.cos(cap.radius), tol)


def dualize_cap(cap: Cap) -> Zone:
    """The zone whose central hyperplane is orthogonal to the cap center."""
    if not cap.radius < HALF_PI:
        raise InvalidGeometry(f"cap radius {cap.radius!r} >= pi/2 has no proper dual zone")
    return Zone(cap.center, cap.radius)


def dualize_zone(zone: Zone) -> Cap:
    """The dual cap on the side of the stored normal.

    A zone has two antipodal dual caps; which one is returned is decided by
    the sign the caller stored in ``zone.normal``.
    """
    return Cap(zone.normal, zone.half_width)


def stack(points: Iterable[PointLike]) -> np.ndarray:
    """Stack points into an (m, d+1) array."""
    rows = [as_array(p) for p in points]
    if not rows:
        return np.zeros((0, 0))
    dims = {r.shape[-1] for r in rows}
    if len(dims) != 1:
        raise DimensionMismatch(f"mixed coordinate counts {sorted(dims)}")
    return np.vstack(rows)


def check_dimensions(shapes: Sequence[Union[Zone, Cap, GreatSphere]]) -> int:
    """Return the common sphere dimension of ``shapes`` or raise."""
    dims = {s.dimension for s in shapes}
    if len(dims) > 1:
        raise DimensionMismatch(f"mixed sphere dimensions {sorted(dims)}")
    if not dims:
        raise InvalidGeometry("empty input")
    return dims.pop()
