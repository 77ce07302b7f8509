"""Tight total-width-pi coverings and the consequences of the width bound.

The only coverings of total width exactly pi have coplanar normals whose
lines, taken in angular order, are separated by the sum of the neighbouring
half-widths.  ``tight_configuration`` builds them and ``check_tightness``
recognizes them.  The remaining functions turn cap and great-sphere questions
into zone families of total width below pi and read the answer off a witness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .core import (
    DEFAULT_TOL,
    HALF_PI,
    Cap,
    GreatSphere,
    UnitVector,
    Zone,
    angular_distance,
    check_dimensions,
    distance_to_great_sphere,
    dualize_cap,
    stack,
)
from .errors import (
    InvalidGeometry,
    RadiusBudgetTooLarge,
    RadiusBudgetTooSmall,
    WidthBudgetNotBelow2r,
    WidthSumNotPi,
    ZoneCoverError,
)
from .pipeline import clearances, find_witness, total_width

TIGHT_SUM_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class TightnessCertificate:
    ordering: tuple[int, ...]
    plane_basis: np.ndarray
    line_angles: tuple[float, ...]
    residuals: tuple[float, ...]
    coplanarity_defect: float


@dataclass(frozen=True)
class NotTight:
    condition: str  # "width", "coplanarity" or "spacing"
    reason: str


def tight_configuration(half_widths: Sequence[float], d: int) -> list[Zone]:
    """Zones of total width pi with consecutive normals ``a_i + a_{i+1}`` apart.

    Normals lie in the plane of the first two coordinate axes of R^{d+1}.
    """
    half_widths = [float(a) for a in half_widths]
    if len(half_widths) < 2:
        raise ValueError("a tight configuration needs at least two zones")
    if d < 1:
        raise ValueError("d must be at least 1")
    width = 2.0 * math.fsum(half_widths)
    if abs(width - math.pi) > TIGHT_SUM_TOL:
        raise WidthSumNotPi(f"total width {width!r} differs from pi")
    zones = []
    theta = 0.0
    for i, a in enumerate(half_widths):
        if i:
            theta += half_widths[i - 1] + a
        coords = [0.0] * (d + 1)
        coords[0] = math.cos(theta)
        coords[1] = math.sin(theta)
        zones.append(Zone(UnitVector.normalized(coords), a))
    return zones


def equal_tight_configuration(n: int, d: int = 2) -> list[Zone]:
    """n equal zones of width pi/n in the tight layout."""
    return tight_configuration([math.pi / (2 * n)] * n, d)


def _canonical_line_angle(x: float, y: float) -> float:
    # a line is a normal up to sign: keep the representative with y > 0 (x > 0 if y == 0)
    if y < 0.0 or (y == 0.0 and x < 0.0):
        x, y = -x, -y
    return math.atan2(y, x) % math.pi


def check_tightness(
    zones: Sequence[Zone], tol: float = DEFAULT_TOL
) -> Union[TightnessCertificate, NotTight]:
    check_dimensions(zones)
    width = total_width(zones)
    if abs(width - math.pi) > tol:
        return NotTight("width", f"total width {width!r} differs from pi by more than {tol}")

    normals = stack(z.normal for z in zones)
    _, s, vt = np.linalg.svd(normals)
    defect = float(s[2]) if len(s) > 2 else 0.0
    if defect > tol:
        return NotTight("coplanarity", f"normals span more than a plane (third singular value {defect!r})")
    basis = vt[:2]

    proj = normals @ basis.T
    angles = np.array([_canonical_line_angle(x, y) for x, y in proj])
    order = np.argsort(angles, kind="stable")
    sorted_angles = angles[order]
    a = np.array([z.half_width for z in zones])[order]
    n = len(zones)
    residuals = []
    for k in range(n):
        nxt = (k + 1) % n
        gap = sorted_angles[nxt] - sorted_angles[k]
        if nxt == 0:
            gap += math.pi
        residuals.append(abs(gap - (a[k] + a[nxt])))
    if n > 1 and np.any(np.diff(sorted_angles) <= 0.0):
        return NotTight("spacing", "two zones share a normal line")
    worst = max(residuals)
    if worst > tol:
        return NotTight("spacing", f"consecutive line angles miss a_i + a_(i+1) by {worst!r}")
    return TightnessCertificate(
        ordering=tuple(int(i) for i in order),
        plane_basis=basis,
        line_angles=tuple(float(t) for t in sorted_angles),
        residuals=tuple(float(r) for r in residuals),
        coplanarity_defect=defect,
    )


def antipodal_common_point(caps: Sequence[Cap], tol: float = DEFAULT_TOL) -> UnitVector:
    """A point lying in every antipodal cap pair ``cap ∪ -cap``.

    Needs total radius strictly above ``(n - 1) pi/2 + tol``: the complements
    of the pairs are zones of width ``pi - 2 r_i`` with total width below pi,
    and any point they miss is common to all pairs.
    """
    caps = list(caps)
    check_dimensions(caps)
    if any(c.radius > HALF_PI for c in caps):
        raise InvalidGeometry("antipodal cap radii must not exceed pi/2")
    n = len(caps)
    budget = math.fsum(c.radius for c in caps)
    if not budget > (n - 1) * HALF_PI + tol:
        raise RadiusBudgetTooSmall(
            f"total radius {budget!r} is not above (n - 1) pi/2 = {(n - 1) * HALF_PI!r}"
        )
    # a pair of radius pi/2 covers the sphere and has an empty complement
    complements = [
        Zone(c.center, HALF_PI - c.radius) for c in caps if HALF_PI - c.radius > 0.0
    ]
    if not complements:
        return caps[0].center
    p = find_witness(complements, tol).witness
    for i, c in enumerate(caps):
        near = min(angular_distance(p, c.center), angular_distance(p, -c.center))
        if near > c.radius + tol:
            raise ZoneCoverError(f"witness misses antipodal cap {i} by {near - c.radius!r}")
    return p


def avoiding_cap(great_spheres: Sequence[GreatSphere], tol: float = DEFAULT_TOL) -> Cap:
    """An open cap of radius ``pi/(2n) - tol`` meeting none of the great spheres."""
    great_spheres = list(great_spheres)
    check_dimensions(great_spheres)
    n = len(great_spheres)
    radius = math.pi / (2 * n) - tol
    zones = [Zone(g.normal, radius) for g in great_spheres]
    p = find_witness(zones, tol).witness
    for i, g in enumerate(great_spheres):
        clearance = distance_to_great_sphere(p, g.normal)
        if clearance < radius - tol:
            raise ZoneCoverError(f"cap center is only {clearance!r} from great sphere {i}")
    return Cap(p, radius)


def refute_cap_covering(target: Cap, zones: Sequence[Zone], tol: float = DEFAULT_TOL) -> UnitVector:
    """A point of ``target`` outside every zone, given total width below ``2 r``.

    The complement of ``target ∪ -target`` is a zone of width ``pi - 2r``;
    adding it keeps the total below pi, so the refutation yields a point in
    ``target`` or its antipode, and zones are symmetric under antipody.
    """
    zones = list(zones)
    if zones:
        check_dimensions(zones + [target])
    r = target.radius
    if r > HALF_PI:
        raise InvalidGeometry(f"target radius {r!r} exceeds pi/2")
    width = total_width(zones)
    if not width < 2.0 * r - tol:
        raise WidthBudgetNotBelow2r(f"total width {width!r} is not below 2r = {2.0 * r!r}")
    if not zones:
        return target.center
    family = list(zones)
    if HALF_PI - r > 0.0:
        family.append(Zone(target.center, HALF_PI - r))
    p = find_witness(family, tol).witness
    if float(p.array @ target.center.array) < 0.0:
        p = -p
    if angular_distance(p, target.center) > r + tol:
        raise ZoneCoverError("witness landed outside the target cap")
    if clearances(zones, p.array).min() < -tol:
        raise ZoneCoverError("witness lies inside an input zone")
    return p


def separating_great_sphere(caps: Sequence[Cap], tol: float = DEFAULT_TOL) -> GreatSphere:
    """A great sphere missing every cap, given total radius below ``pi/2 - tol``."""
    caps = list(caps)
    check_dimensions(caps)
    budget = math.fsum(c.radius for c in caps)
    if not budget < HALF_PI - tol:
        raise RadiusBudgetTooLarge(f"total radius {budget!r} is not below pi/2 - tol")
    p = find_witness([dualize_cap(c) for c in caps], tol).witness
    for i, c in enumerate(caps):
        # the great sphere orthogonal to p is at distance asin|<c, p>| from the center
        if not distance_to_great_sphere(c.center, p) > c.radius + tol:
            raise ZoneCoverError(f"great sphere meets cap {i}")
    return GreatSphere(p)
