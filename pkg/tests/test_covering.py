import math

import numpy as np
import pytest

from helpers import cap_points, point_at, random_unit, tangent_directions
from zonecover.core import Cap, Membership, UnitVector, cap_membership, vector_angle
from zonecover.covering import (
    merge_caps,
    shrink_profile,
    shrink_three_caps,
    strict_shrink_possible,
)
from zonecover.errors import (
    ConditionsViolated,
    CoplanarInputs,
    PreconditionMismatch,
    RadiusBudgetExceeded,
    ZeroVector,
)

E1, E2, E3 = (UnitVector.basis(2, i) for i in range(3))


def tangent_pair(rng, d, a1, a2):
    """Two caps of radii a1, a2 whose centers are exactly a1 + a2 apart."""
    u1 = random_unit(rng, d)
    t = tangent_directions(u1.array, 1, rng)[0]
    sep = a1 + a2
    u2 = UnitVector.normalized(math.cos(sep) * u1.array + math.sin(sep) * t)
    return Cap(u1, a1), Cap(u2, a2)


def assert_covers(outer, caps, rng, m=1000, tol=1e-9):
    for cap in caps:
        for boundary in (True, False):
            for p in cap_points(cap, m, rng, boundary=boundary):
                assert cap_membership(outer, p, tol) is not Membership.OUTSIDE


class TestMergeCaps:
    def test_concentric(self):
        cert = merge_caps([Cap(E1, 0.2), Cap(E1, 0.3)])
        assert cert.merged.center == E1
        assert cert.merged.radius == pytest.approx(0.5, abs=1e-15)
        assert cert.slack_per_cap == pytest.approx((0.0, 0.0), abs=1e-15)
        assert cert.holds()

    def test_tangent_caps_hit_the_norm_bound(self, rng):
        a, b = tangent_pair(rng, 2, 0.4, 0.7)
        cert = merge_caps([a, b])
        # closed form: |w|^2 = s1^2 + s2^2 + 2 s1 s2 cos(a1 + a2) = sin^2(a1 + a2)
        s1, s2 = math.sin(0.4), math.sin(0.7)
        expected = math.sqrt(s1 * s1 + s2 * s2 + 2 * s1 * s2 * math.cos(1.1))
        assert abs(expected - math.sin(1.1)) < 1e-15
        assert abs(np.linalg.norm(cert.w) - math.sin(1.1)) < 1e-12
        for cap, other in ((a, 0.7), (b, 0.4)):
            w_i = math.sin(cap.radius) * cap.center.array
            assert abs(vector_angle(cert.w, w_i) - other) < 1e-8
        assert_covers(cert.merged, [a, b], rng)

    def test_overlapping_caps_are_covered(self, rng):
        u2 = point_at(2, math.cos(math.pi / 16), math.sin(math.pi / 16))
        caps = [Cap(E1, math.pi / 8), Cap(u2, math.pi / 8)]
        cert = merge_caps(caps)
        assert cert.merged.radius == pytest.approx(math.pi / 4)
        assert_covers(cert.merged, caps, rng)

    def test_single_cap_is_returned_unchanged(self):
        cap = Cap(E2, 0.3)
        cert = merge_caps([cap])
        assert cert.merged is cap
        assert cert.slack_norm == 0.0 and cert.slack_per_cap == (0.0,)

    def test_radius_budget(self):
        with pytest.raises(RadiusBudgetExceeded):
            merge_caps([Cap(E1, 0.9), Cap(E2, 0.9)])

    def test_far_apart_caps_violate_the_norm_condition(self):
        with pytest.raises(ConditionsViolated) as info:
            merge_caps([Cap(E1, 0.3), Cap(E2, 0.3)])
        assert info.value.index is None

    def test_per_cap_condition_reports_index(self):
        # three caps: two far apart plus one in the middle keep |w| large
        # but |w - w_2| (the outer pair) exceeds sin(alpha - a_2)
        mid = point_at(2, 1, 1)
        caps = [Cap(E1, 0.2), Cap(E2, 0.2), Cap(mid, 0.6)]
        with pytest.raises(ConditionsViolated) as info:
            merge_caps(caps)
        assert info.value.index is not None

    def test_zero_vector(self):
        with pytest.raises(ZeroVector):
            merge_caps([Cap(E1, 0.3), Cap(-E1, 0.3)])

    def test_random_valid_merges_cover_their_inputs(self, rng):
        # random caps near a common center; keep the ones satisfying the hypotheses
        done = 0
        while done < 50:
            d = int(rng.integers(2, 4))
            c = random_unit(rng, d)
            n = int(rng.integers(2, 5))
            radii = rng.dirichlet(np.ones(n)) * rng.uniform(0.2, math.pi / 2)
            spread = rng.uniform(0.0, 0.3)
            caps = []
            for r in radii:
                t = tangent_directions(c.array, 1, rng)[0]
                caps.append(Cap(UnitVector.normalized(math.cos(spread) * c.array + math.sin(spread) * t), r))
            try:
                cert = merge_caps(caps)
            except ConditionsViolated:
                continue
            w = cert.w
            alpha = cert.alpha
            # re-derive the hypotheses directly
            assert np.linalg.norm(w) >= math.sin(alpha) - 1e-9
            for cap in caps:
                rest = w - math.sin(cap.radius) * cap.center.array
                assert np.linalg.norm(rest) <= math.sin(alpha - cap.radius) + 1e-9
            assert_covers(cert.merged, caps, rng, m=200)
            done += 1


class TestStrictShrink:
    def test_tangent_pair_is_tight(self, rng):
        strict, index = strict_shrink_possible(tangent_pair(rng, 2, 0.3, 0.5))
        assert strict is False and index in (0, 1)

    def test_deep_overlap_shrinks(self):
        u2 = point_at(2, math.cos(0.1), math.sin(0.1))
        caps = [Cap(E1, 0.2), Cap(u2, 0.2)]
        cert = merge_caps(caps)
        assert np.linalg.norm(cert.w) > math.sin(0.4)
        assert strict_shrink_possible(caps) == (True, None)

    def test_single_cap(self):
        assert strict_shrink_possible([Cap(E1, 0.4)]) == (False, 0)

    def test_law_of_sines_in_equality_case(self, rng):
        for _ in range(50):
            a1, a2 = rng.uniform(0.05, 0.75, 2)
            caps = tangent_pair(rng, int(rng.integers(1, 4)), a1, a2)
            strict, i = strict_shrink_possible(caps)
            assert not strict
            cert = merge_caps(caps)
            w_i = math.sin(caps[i].radius) * caps[i].center.array
            assert abs(vector_angle(cert.w, w_i) - (cert.alpha - caps[i].radius)) <= 1e-8


def three_cap_instance(out_of_plane=True):
    a = math.pi / 6
    u1 = point_at(2, math.cos(a), math.sin(a))
    u2 = point_at(2, math.cos(a), -math.sin(a))
    u3 = E3 if out_of_plane else E2
    return Cap(u1, a), Cap(u2, a), Cap(u3, a)


class TestShrinkThreeCaps:
    def test_preconditions_hold_exactly(self):
        d1, d2, d3 = three_cap_instance()
        w = [math.sin(c.radius) * c.center.array for c in (d1, d2, d3)]
        assert abs(np.linalg.norm(w[0] + w[1]) - math.sin(math.pi / 3)) < 1e-12
        assert abs(np.linalg.norm(w[0] + w[1] + w[2]) - 1.0) < 1e-12

    def test_strictly_smaller_cover(self, rng):
        caps = three_cap_instance()
        cap = shrink_three_caps(*caps)
        assert cap.radius < math.pi / 2 - 1e-3
        assert_covers(cap, caps, rng)

    def test_unperturbed_cap_covers_with_full_budget(self, rng):
        caps = three_cap_instance()
        w123 = sum(math.sin(c.radius) * c.center.array for c in caps)
        w3 = math.sin(caps[2].radius) * caps[2].center.array
        assert abs(vector_angle(w123, w3) - math.pi / 3) < 1e-12
        assert_covers(Cap(UnitVector.normalized(w123), math.pi / 2), caps, rng)

    def test_profile_minimum_is_interior(self):
        eps, radii, _ = shrink_profile(*three_cap_instance())
        k = int(np.argmin(radii))
        assert 0 < k < len(eps) - 1
        assert radii[k] <= radii[k - 1] and radii[k] <= radii[k + 1]
        # the profile tends back to the budget as the step vanishes
        assert radii[-1] == pytest.approx(math.pi / 2, abs=1e-9)

    def test_coplanar_inputs(self):
        with pytest.raises(CoplanarInputs):
            shrink_three_caps(*three_cap_instance(out_of_plane=False))

    def test_precondition_mismatch(self):
        d1, d2, _ = three_cap_instance()
        with pytest.raises(PreconditionMismatch):
            shrink_three_caps(d1, d2, Cap(point_at(2, 0.5, 0.6, 0.8), math.pi / 6))
