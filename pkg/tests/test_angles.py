"""Angle-core transforms: examples and identifiability invariants."""

import math

import pytest

from biqae import angles
from biqae.angles import (
    DomainError,
    ProbInterval,
    ThetaInterval,
    containment_check,
    invert_amplified,
    quadrant_index,
)

HALF_PI = math.pi / 2.0


class TestAmplitudeAngle:
    def test_round_trip_scalar(self):
        assert angles.amplitude_to_angle(0.0) == 0.0
        assert angles.amplitude_to_angle(1.0) == pytest.approx(HALF_PI)
        assert angles.angle_to_amplitude(math.pi / 4) == pytest.approx(0.5)

    def test_out_of_domain(self):
        with pytest.raises(DomainError):
            angles.amplitude_to_angle(1.1)
        with pytest.raises(DomainError):
            angles.amplitude_to_angle(-1e-6)

    def test_tolerance_clamp(self):
        # Within 1e-12 of the boundary: clamp, not error.
        assert angles.amplitude_to_angle(1.0 + 5e-13) == pytest.approx(HALF_PI)


class TestAmplifiedProbability:
    def test_quarter_turn(self):
        assert angles.amplified_probability(math.pi / 6, 1) == pytest.approx(1.0)

    def test_identity_depth(self):
        assert angles.amplified_probability(math.pi / 4, 0) == pytest.approx(0.5)

    def test_direct_evaluation(self):
        # sin^2(5 * 0.4), computed independently.
        assert angles.amplified_probability(0.4, 2) == pytest.approx(
            0.826821810431806, abs=1e-6
        )


class TestQuadrantIndex:
    def test_unamplified(self):
        assert quadrant_index(0.1, 1) == 0

    def test_mid_quadrant(self):
        assert quadrant_index(math.pi / 4, 3) == 1

    def test_high_quadrant(self):
        assert quadrant_index(0.2 * math.pi, 9) == 3

    def test_exact_boundary_goes_low(self):
        # K * theta an exact multiple of pi/2 takes the lower index.
        assert quadrant_index(HALF_PI, 3) == 2
        assert quadrant_index(HALF_PI, 1) == 0

    def test_even_k_rejected(self):
        with pytest.raises(DomainError):
            quadrant_index(0.1, 2)

    def test_range(self):
        for K in (1, 3, 5, 9, 21):
            for i in range(200):
                theta = HALF_PI * i / 200
                assert 0 <= quadrant_index(theta, K) <= K - 1


class TestInvertAmplified:
    def test_identity_depth_reduces_to_arcsin(self):
        for x in (0.0, 0.1, 0.5, 0.93, 1.0):
            t = invert_amplified(ProbInterval(x, x), 1, 0)
            assert t.lo == pytest.approx(angles.amplitude_to_angle(x))
            assert t.lo == t.hi

    def test_even_branch_round_trip(self):
        p = math.sin(1.5) ** 2
        t = invert_amplified(ProbInterval(p, p), 5, 0)
        assert t.lo == pytest.approx(1.5 / 5, abs=1e-12)

    def test_odd_branch_round_trip(self):
        p = math.sin(2.0) ** 2
        t = invert_amplified(ProbInterval(p, p), 5, 1)
        assert t.lo == pytest.approx(2.0 / 5, abs=1e-12)

    def test_bad_quadrant_rejected(self):
        with pytest.raises(DomainError):
            invert_amplified(ProbInterval(0.2, 0.4), 5, 5)
        with pytest.raises(DomainError):
            invert_amplified(ProbInterval(0.2, 0.4), 5, -1)

    def test_ordering_preserved_both_parities(self):
        p = ProbInterval(0.2, 0.6)
        for l in range(5):
            t = invert_amplified(p, 5, l)
            assert t.lo <= t.hi


class TestIdentifiabilityInvariants:
    def test_round_trip_grid(self):
        # 10^4-point (theta, k) grid; recovery within 1e-9.
        n_theta = 200
        ks = range(50)
        for i in range(1, n_theta):
            theta = HALF_PI * i / n_theta
            for k in ks:
                K = 2 * k + 1
                p = angles.amplified_probability(theta, k)
                l = quadrant_index(theta, K)
                t = invert_amplified(ProbInterval(p, p), K, l)
                assert abs(t.lo - theta) < 1e-9, (theta, k)

    def test_multiplicity(self):
        # For fixed p and K all K branch angles are distinct and map back to p.
        p = 0.37
        for K in (3, 5, 9):
            k = (K - 1) // 2
            thetas = [
                invert_amplified(ProbInterval(p, p), K, l).lo for l in range(K)
            ]
            assert len(set(round(t, 12) for t in thetas)) == K
            for theta in thetas:
                assert angles.amplified_probability(theta, k) == pytest.approx(
                    p, abs=1e-9
                )


class TestContainment:
    def test_feasible_in_quadrant(self):
        rep = containment_check(ThetaInterval(0.30, 0.31), 5)
        assert rep.feasible and rep.quadrant == 0

    def test_straddles_boundary(self):
        rep = containment_check(ThetaInterval(0.30, 0.80), 3)
        assert not rep.feasible

    def test_degenerate_always_feasible(self):
        rep = containment_check(ThetaInterval(0.3, 0.3), 41)
        assert rep.feasible

    def test_base3_slot(self):
        # Scaled interval [0.9, 0.93] sits in quadrant 1, slot width pi/6.
        rep = containment_check(ThetaInterval(0.30, 0.31), 3, bases=(3,))
        assert rep.feasible
        assert rep.slots[3] is not None

    def test_slot_none_when_straddling_slot_edge(self):
        # Interval inside a quadrant but across a pi/6 slot edge.
        lo = (math.pi / 6 - 0.01) / 1
        hi = (math.pi / 6 + 0.01) / 1
        rep = containment_check(ThetaInterval(lo, hi), 1, bases=(3,))
        assert rep.feasible
        assert rep.slots[3] is None

    def test_infeasible_reports_no_slots(self):
        rep = containment_check(ThetaInterval(0.30, 0.80), 3, bases=(3, 5))
        assert rep.slots == {3: None, 5: None}


class TestIntervalTypes:
    def test_theta_interval_validation(self):
        with pytest.raises(DomainError):
            ThetaInterval(0.5, 0.4)
        with pytest.raises(DomainError):
            ThetaInterval(-0.1, 0.4)

    def test_prob_interval_validation(self):
        with pytest.raises(DomainError):
            ProbInterval(0.2, 1.2)

    def test_radius_width(self):
        t = ThetaInterval(0.2, 0.6)
        assert t.radius == pytest.approx(0.2)
        assert t.width == pytest.approx(0.4)
