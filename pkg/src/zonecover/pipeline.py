"""Finding a point that a family of zones of total width below pi misses.

Each zone contributes a weighted normal ``w_i = sin(a_i) n_i``.  A sign vector
that locally maximizes ``|sum s_i w_i|`` puts the sum at distance at least
``sin(a_i)`` from every central hyperplane, so if the sum has norm below one
its direction is uncovered.  Otherwise some group of zones can be merged into
a single zone of the same total width that contains them all, and the search
restarts on the shorter list.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence, Union

import numpy as np

from .core import (
    DEFAULT_TOL,
    WeightedNormal,
    UnitVector,
    Zone,
    check_dimensions,
    dualize_cap,
    dualize_zone,
    stack,
)
from .covering import MergeCertificate, merge_caps
from .errors import NumericalStall, SubsetBoundExceeded, WidthBudgetExceeded

MAX_ZONES = 20
# a flip must raise |w|^2 by more than 4 * FLIP_EPS to be taken
FLIP_EPS = 1e-13


@dataclass(frozen=True, eq=False)
class SignState:
    signs: np.ndarray
    w: np.ndarray
    norm: float
    # |w|^2 before the first flip and after each executed flip
    history: tuple[float, ...] = ()

    @property
    def flips(self) -> int:
        return len(self.history) - 1


@dataclass(frozen=True, eq=False)
class MergeStep:
    merged_indices: frozenset[int]
    replacement: Zone
    certificate: MergeCertificate
    # indices into the caller's original zone list that the replacement stands for
    covers: frozenset[int] = frozenset()


@dataclass(frozen=True, eq=False)
class WitnessReport:
    witness: UnitVector
    clearances: tuple[float, ...]
    trace: tuple[MergeStep, ...]
    iterations: int
    sign_state: Optional[SignState] = None
    final_zones: tuple[Zone, ...] = field(default=())

    @property
    def min_clearance(self) -> float:
        return min(self.clearances)


@dataclass(frozen=True)
class TotalWidthAtLeastPi:
    """The zones are too wide for the refutation to apply; nothing is claimed."""

    total_width: float


def total_width(zones: Sequence[Zone]) -> float:
    return math.fsum(z.width for z in zones)


def clearances(zones: Sequence[Zone], p: np.ndarray) -> np.ndarray:
    """Signed distance from ``p`` to each zone (positive means outside)."""
    normals = stack(z.normal for z in zones)
    p = np.asarray(p, dtype=float)
    t = normals @ p
    perp = np.linalg.norm(p[None, :] - t[:, None] * normals, axis=1)
    return np.arctan2(np.abs(t), perp) - np.array([z.half_width for z in zones])


def local_max_signs(weighted: Sequence[WeightedNormal]) -> SignState:
    """Greedy single-flip ascent of ``|sum s_i w_i|`` from the all-plus vector.

    At return no single flip increases the norm, i.e.
    ``s_i <w, w_i> >= |w_i|^2`` for every i (up to ``FLIP_EPS``).
    """
    if not weighted:
        raise ValueError("need at least one weighted normal")
    W = np.vstack([wn.vector for wn in weighted])
    sq = np.einsum("ij,ij->i", W, W)
    signs = np.ones(len(weighted))
    w = signs @ W
    history = [float(w @ w)]
    while True:
        deficit = sq - signs * (W @ w)
        i = int(np.argmax(deficit))
        if deficit[i] <= FLIP_EPS:
            break
        signs[i] = -signs[i]
        w = signs @ W
        current = float(w @ w)
        if not current > history[-1]:
            raise NumericalStall(f"flip {i} did not increase |w|^2 ({current!r})")
        history.append(current)
    return SignState(signs.astype(int), w, float(np.linalg.norm(w)), tuple(history))


def minimal_violating_subset(zones: Sequence[Zone]) -> Optional[tuple[int, ...]]:
    """Smallest index set I with ``|sum_I w_i| > sin(sum_I a_i)``.

    Sets are scanned by size and then lexicographically, so every proper
    subset of the result fails the test.  Returns None if no set qualifies.
    """
    W = np.vstack([z.weight * z.normal.array for z in zones])
    a = np.array([z.half_width for z in zones])
    n = len(zones)
    for k in range(2, n + 1):
        combos = np.array(list(combinations(range(n), k)), dtype=np.intp)
        norms = np.linalg.norm(W[combos].sum(axis=1), axis=1)
        hit = np.flatnonzero(norms > np.sin(a[combos].sum(axis=1)))
        if hit.size:
            return tuple(int(i) for i in combos[hit[0]])
    return None


def _check_inputs(zones: Sequence[Zone], tol: float) -> None:
    if not zones:
        raise ValueError("need at least one zone")
    if len(zones) > MAX_ZONES:
        raise SubsetBoundExceeded(f"{len(zones)} zones exceeds the limit of {MAX_ZONES}")
    check_dimensions(zones)
    width = total_width(zones)
    if not width < math.pi - tol:
        raise WidthBudgetExceeded(f"total width {width!r} is not below pi - tol")


def find_witness(zones: Sequence[Zone], tol: float = DEFAULT_TOL) -> WitnessReport:
    """Return a point outside every zone, with the merge trace that produced it.

    Requires total width below ``pi - tol`` and at most ``MAX_ZONES`` zones.
    The reported clearances are measured against the zones as given.
    """
    originals = tuple(zones)
    _check_inputs(originals, tol)

    working = list(originals)
    members = [frozenset({i}) for i in range(len(working))]
    trace: list[MergeStep] = []
    iterations = 0
    while True:
        iterations += 1
        state = local_max_signs([WeightedNormal.of(z) for z in working])
        candidate = state.w / state.norm
        if state.norm <= 1.0 + tol:
            clear = clearances(originals, candidate)
            if state.norm < 1.0 - tol or clear.min() >= -tol:
                return WitnessReport(
                    witness=UnitVector.normalized(candidate),
                    clearances=tuple(float(c) for c in clear),
                    trace=tuple(trace),
                    iterations=iterations,
                    sign_state=state,
                    final_zones=tuple(working),
                )

        # zones do not change under normal negation, so make every sign +1
        oriented = [z if s > 0 else z.flipped() for z, s in zip(working, state.signs)]
        subset = minimal_violating_subset(oriented)
        if subset is None:
            raise NumericalStall(
                f"|w| = {state.norm!r} but no zone group violates the merge bound"
            )
        cert = merge_caps([dualize_zone(oriented[i]) for i in subset], tol=tol)
        replacement = dualize_cap(cert.merged)
        chosen = frozenset(subset)
        covers = frozenset().union(*(members[i] for i in subset))
        trace.append(MergeStep(chosen, replacement, cert, covers))
        keep = [i for i in range(len(oriented)) if i not in chosen]
        working = [oriented[i] for i in keep] + [replacement]
        members = [members[i] for i in keep] + [covers]


def refute_or_report(
    zones: Sequence[Zone], tol: float = DEFAULT_TOL
) -> Union[WitnessReport, TotalWidthAtLeastPi]:
    width = total_width(zones)
    if width < math.pi - tol:
        return find_witness(zones, tol)
    return TotalWidthAtLeastPi(width)
