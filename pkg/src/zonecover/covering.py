"""Covering a family of caps by one cap whose radius is the sum of theirs.

``merge_caps`` centers the covering cap on the normalized sum of the weighted
centers ``w_i = sin(r_i) u_i``.  It covers every input whenever

    |w| >= sin(alpha)   and   |w - w_i| <= sin(alpha - r_i)  for all i,

with ``alpha`` the total radius; the certificate stores the slack of each of
these inequalities.  ``shrink_three_caps`` handles the case where all of them
are tight but the three weighted centers span a 3-space, which always admits
a strictly smaller cover.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import DEFAULT_TOL, HALF_PI, Cap, UnitVector, check_dimensions, vector_angle
from .errors import (
    ConditionsViolated,
    CoplanarInputs,
    PreconditionMismatch,
    RadiusBudgetExceeded,
    ZeroVector,
    ZoneCoverError,
)

EQUALITY_TOL = 1e-8
COPLANAR_RATIO = 1e-8
SHRINK_GRID = 40


@dataclass(frozen=True, eq=False)
class MergeCertificate:
    inputs: tuple[Cap, ...]
    merged: Cap
    w: np.ndarray
    alpha: float
    slack_norm: float
    slack_per_cap: tuple[float, ...]

    def holds(self, tol: float = DEFAULT_TOL) -> bool:
        return (
            self.slack_norm >= -tol
            and all(s >= -tol for s in self.slack_per_cap)
            and self.merged.radius <= self.alpha + tol
        )


def weighted_centers(caps: Sequence[Cap]) -> np.ndarray:
    return np.vstack([math.sin(c.radius) * c.center.array for c in caps])


def merge_caps(caps: Sequence[Cap], tol: float = DEFAULT_TOL) -> MergeCertificate:
    """Replace ``caps`` by a single cap of radius equal to their total radius.

    Raises ConditionsViolated if the covering hypotheses fail beyond ``tol``;
    the exception's ``index`` names the offending cap, or is None when the
    norm condition is the one that fails.
    """
    caps = tuple(caps)
    if not caps:
        raise ValueError("merge_caps needs at least one cap")
    check_dimensions(caps)
    radii = np.array([c.radius for c in caps])
    alpha = float(math.fsum(radii))
    if alpha > HALF_PI + tol:
        raise RadiusBudgetExceeded(f"total radius {alpha!r} exceeds pi/2")

    wi = weighted_centers(caps)
    w = wi.sum(axis=0)
    norm = float(np.linalg.norm(w))
    slack_norm = norm - math.sin(alpha)
    # w - w_i is summed directly rather than subtracted, to keep it exact for n = 2
    rest = [np.delete(wi, i, axis=0).sum(axis=0) for i in range(len(caps))]
    slack_per_cap = tuple(
        math.sin(alpha - r) - float(np.linalg.norm(v)) for r, v in zip(radii, rest)
    )

    if len(caps) == 1:
        return MergeCertificate(caps, caps[0], w, alpha, slack_norm, slack_per_cap)
    if norm <= tol:
        raise ZeroVector("weighted centers sum to (nearly) zero")
    if slack_norm < -tol:
        raise ConditionsViolated(f"|w| = {norm!r} < sin(alpha) = {math.sin(alpha)!r}", None)
    for i, s in enumerate(slack_per_cap):
        if s < -tol:
            raise ConditionsViolated(f"|w - w_{i}| exceeds sin(alpha - r_{i}) by {-s!r}", i)

    merged = Cap(UnitVector.normalized(w), alpha)
    return MergeCertificate(caps, merged, w, alpha, slack_norm, slack_per_cap)


def strict_shrink_possible(
    caps: Sequence[Cap], tol: float = EQUALITY_TOL
) -> tuple[bool, Optional[int]]:
    """Decide whether some cap of radius strictly below the budget covers ``caps``.

    Returns ``(True, None)`` when the norm inequality is strict or every
    per-cap inequality is strict.  Otherwise returns ``(False, i)`` with ``i``
    the first cap whose per-cap inequality is an equality.
    """
    cert = merge_caps(caps, tol=max(tol, DEFAULT_TOL))
    if cert.slack_norm > tol:
        return True, None
    tight = [i for i, s in enumerate(cert.slack_per_cap) if s <= tol]
    if not tight:
        return True, None
    return False, tight[0]


def covering_radius(center: np.ndarray, caps: Sequence[Cap]) -> float:
    """Smallest radius of a cap at ``center`` containing every cap in ``caps``."""
    return max(vector_angle(center, c.center.array) + c.radius for c in caps)


def _coplanar(vectors: np.ndarray) -> bool:
    if vectors.shape[1] < 3:
        return True
    s = np.linalg.svd(vectors, compute_uv=False)
    return bool(s[-1] <= COPLANAR_RATIO * s[0])


def shrink_profile(d1: Cap, d2: Cap, d3: Cap, grid: int = SHRINK_GRID):
    """Covering radius along the path ``w123 + eps * w3``.

    Returns ``(eps_values, radii, centers)`` for ``eps = alpha * 2**-k``,
    ``k = 1..grid``.
    """
    caps = (d1, d2, d3)
    alpha = d1.radius + d2.radius + d3.radius
    wi = weighted_centers(caps)
    w123 = wi.sum(axis=0)
    eps = alpha * 2.0 ** -np.arange(1, grid + 1)
    centers = w123[None, :] + eps[:, None] * wi[2][None, :]
    radii = np.array([covering_radius(c, caps) for c in centers])
    return eps, radii, centers


def shrink_three_caps(d1: Cap, d2: Cap, d3: Cap, tol: float = DEFAULT_TOL) -> Cap:
    """A cap of radius strictly below ``r1 + r2 + r3`` covering three tight caps.

    Requires ``|w1 + w2| = sin(r1 + r2)`` and ``|w1 + w2 + w3| = sin(alpha)``
    within ``tol`` and non-coplanar weighted centers.  The center is pushed
    from ``w123`` towards ``w3`` along a geometric grid of step sizes and the
    smallest covering radius found is returned.
    """
    caps = (d1, d2, d3)
    check_dimensions(caps)
    alpha = d1.radius + d2.radius + d3.radius
    if alpha > HALF_PI + tol:
        raise RadiusBudgetExceeded(f"total radius {alpha!r} exceeds pi/2")
    wi = weighted_centers(caps)
    n12 = float(np.linalg.norm(wi[0] + wi[1]))
    n123 = float(np.linalg.norm(wi.sum(axis=0)))
    if abs(n12 - math.sin(d1.radius + d2.radius)) > tol:
        raise PreconditionMismatch(f"|w1 + w2| = {n12!r} differs from sin(r1 + r2)")
    if abs(n123 - math.sin(alpha)) > tol:
        raise PreconditionMismatch(f"|w1 + w2 + w3| = {n123!r} differs from sin(alpha)")
    if _coplanar(wi):
        raise CoplanarInputs("weighted centers are coplanar; no strict shrink exists")

    _, radii, centers = shrink_profile(d1, d2, d3)
    best = int(np.argmin(radii))
    if not radii[best] < alpha - tol:
        raise ZoneCoverError(
            f"no grid step improved on the budget {alpha!r} (best {radii[best]!r})"
        )
    return Cap(UnitVector.normalized(centers[best]), float(radii[best]))
