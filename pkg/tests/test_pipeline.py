import itertools
import math

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from helpers import point_at, random_unit, random_zone_family, unit_vectors
from zonecover.core import UnitVector, WeightedNormal, Zone
from zonecover.errors import SubsetBoundExceeded, WidthBudgetExceeded
from zonecover.pipeline import (
    MAX_ZONES,
    TotalWidthAtLeastPi,
    WitnessReport,
    clearances,
    find_witness,
    local_max_signs,
    minimal_violating_subset,
    refute_or_report,
    total_width,
)

E1, E2, E3 = (UnitVector.basis(2, i) for i in range(3))


def weighted(zones):
    return [WeightedNormal.of(z) for z in zones]


class TestLocalMaxSigns:
    def test_single_zone(self):
        state = local_max_signs(weighted([Zone(E3, 0.4)]))
        assert state.signs.tolist() == [1]
        assert state.norm == pytest.approx(math.sin(0.4))
        assert state.flips == 0

    def test_orthogonal_pair(self):
        state = local_max_signs(weighted([Zone(E1, math.pi / 8), Zone(E2, math.pi / 8)]))
        assert state.norm == pytest.approx(math.sqrt(2) * math.sin(math.pi / 8), abs=1e-15)

    def test_antipodal_pair_matches_enumeration(self):
        zones = [Zone(E1, 0.3), Zone(-E1, 0.5)]
        W = np.vstack([wn.vector for wn in weighted(zones)])
        best = max(np.linalg.norm(np.array(s) @ W) for s in itertools.product((1, -1), repeat=2))
        state = local_max_signs(weighted(zones))
        assert state.norm == pytest.approx(best, abs=1e-15)
        assert state.norm == pytest.approx(math.sin(0.3) + math.sin(0.5))

    def test_local_max_certificate(self, rng):
        for _ in range(300):
            d = int(rng.integers(1, 5))
            n = int(rng.integers(1, 12))
            zones = [Zone(random_unit(rng, d), rng.uniform(0.01, 1.5)) for _ in range(n)]
            state = local_max_signs(weighted(zones))
            W = np.vstack([wn.vector for wn in weighted(zones)])
            np.testing.assert_allclose(state.w, state.signs @ W, atol=1e-15)
            # no single flip increases |w|: s_i <w, w_i> >= |w_i|^2
            lhs = state.signs * (W @ state.w)
            assert np.all(lhs >= np.einsum("ij,ij->i", W, W) - 1e-12)
            assert all(b > a for a, b in zip(state.history, state.history[1:]))

    def test_empty(self):
        with pytest.raises(ValueError):
            local_max_signs([])


class TestMinimalSubset:
    def test_none_when_nothing_violates(self):
        assert minimal_violating_subset([Zone(E1, 0.2), Zone(E2, 0.2)]) is None

    def test_pair_with_identical_normals(self):
        assert minimal_violating_subset([Zone(E1, 0.5), Zone(E1, 0.6)]) == (0, 1)

    def test_agrees_with_brute_force(self, rng):
        for _ in range(200):
            n = int(rng.integers(2, 7))
            center = random_unit(rng, 2).array
            zones = []
            for _ in range(n):
                v = center + 0.6 * rng.standard_normal(3)
                zones.append(Zone(UnitVector.normalized(v), rng.uniform(0.05, 0.5)))
            got = minimal_violating_subset(zones)

            def violates(idx):
                w = sum(z.weight * z.normal.array for z in (zones[i] for i in idx))
                return np.linalg.norm(w) > math.sin(sum(zones[i].half_width for i in idx))

            sizes = [k for k in range(2, n + 1) if any(violates(c) for c in itertools.combinations(range(n), k))]
            if not sizes:
                assert got is None
                continue
            assert got is not None and len(got) == sizes[0] and violates(got)
            # every proper subset with at least two members passes
            for k in range(2, len(got)):
                assert not any(violates(c) for c in itertools.combinations(got, k))


class TestFindWitness:
    def test_single_zone_pole(self):
        rep = find_witness([Zone(E3, 0.7)])
        assert abs(abs(rep.witness.array @ E3.array) - 1.0) < 1e-12
        assert rep.min_clearance == pytest.approx(math.pi / 2 - 0.7)
        assert rep.trace == ()

    def test_three_orthogonal_zones(self):
        a = math.pi / 12
        rep = find_witness([Zone(E1, a), Zone(E2, a), Zone(E3, a)])
        assert rep.sign_state.norm == pytest.approx(math.sqrt(3) * math.sin(a))
        assert rep.trace == ()
        np.testing.assert_allclose(np.abs(rep.witness.array), np.full(3, 1 / math.sqrt(3)), atol=1e-12)
        assert rep.min_clearance > 0

    def test_identical_normals_merge(self):
        zones = [Zone(E1, 0.5), Zone(E1, 0.6)]
        rep = find_witness(zones)
        assert len(rep.trace) == 1
        step = rep.trace[0]
        assert step.replacement.half_width == pytest.approx(1.1)
        assert abs(abs(step.replacement.normal.array @ E1.array) - 1) < 1e-12
        assert step.covers == frozenset({0, 1})
        assert abs(abs(rep.witness.array @ E1.array) - 1) < 1e-12
        clear_merged = clearances([step.replacement], rep.witness.array)[0]
        assert clear_merged == pytest.approx(math.pi / 2 - 1.1)
        assert rep.min_clearance == pytest.approx(math.pi / 2 - 0.6)

    def test_width_is_conserved_by_merges(self, rng):
        for _ in range(200):
            d = int(rng.integers(1, 4))
            zones = random_zone_family(rng, d, int(rng.integers(2, 8)), rng.uniform(1.0, math.pi - 0.01))
            rep = find_witness(zones)
            assert total_width(rep.final_zones) == pytest.approx(total_width(zones), abs=1e-12)
            covered = frozenset()
            for step in rep.trace:
                assert step.certificate.holds(1e-9)
                covered |= step.covers
            assert rep.min_clearance >= -1e-9

    def test_width_budget(self):
        with pytest.raises(WidthBudgetExceeded):
            find_witness([Zone(E1, 0.8), Zone(E2, 0.8)])

    def test_subset_bound(self):
        with pytest.raises(SubsetBoundExceeded):
            find_witness([Zone(E1, 0.01)] * (MAX_ZONES + 1))

    def test_empty(self):
        with pytest.raises(ValueError):
            find_witness([])


class TestRefuteOrReport:
    def test_dispatches_to_witness(self):
        assert isinstance(refute_or_report([Zone(E1, 0.4)]), WitnessReport)

    def test_tight_pair_is_reported(self):
        zones = [Zone(E1, math.pi / 4), Zone(E2, math.pi / 4)]
        out = refute_or_report(zones)
        assert isinstance(out, TotalWidthAtLeastPi)
        assert out.total_width == pytest.approx(math.pi)


@st.composite
def zone_families(draw):
    n = draw(st.integers(1, 6))
    normals = [draw(unit_vectors(2)) for _ in range(n)]
    raw = draw(st.lists(st.floats(0.05, 1.0), min_size=n, max_size=n))
    budget = draw(st.floats(0.1, math.pi - 0.01))
    scale = budget / math.fsum(raw)
    return [Zone(u, r * scale / 2) for u, r in zip(normals, raw) if r * scale / 2 < math.pi / 2]


@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(zone_families())
def test_every_family_below_pi_is_refuted(zones):
    if not zones:
        return
    rep = find_witness(zones)
    assert rep.min_clearance >= -1e-9
    direct = clearances(zones, rep.witness.array)
    np.testing.assert_allclose(direct, rep.clearances, atol=1e-15)


def test_clearance_matches_sine_form(rng):
    for _ in range(500):
        z = Zone(random_unit(rng, 2), rng.uniform(0.01, 1.5))
        p = random_unit(rng, 2).array
        c = clearances([z], p)[0]
        assert np.sign(abs(p @ z.normal.array) - math.sin(z.half_width)) == np.sign(c) or abs(c) < 1e-12
    assert clearances([Zone(E3, 0.3)], point_at(2, 1, 0, 0).array)[0] == pytest.approx(-0.3)
