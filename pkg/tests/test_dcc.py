import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diagramkit import (
    CoefficientSet,
    Family,
    InfiniteTailError,
    below_threshold,
    contains,
    hurwitz_quotient_transform,
    is_dcc_witnessed,
    longest_strictly_decreasing_chain,
    min_positive,
)

F = Fraction
STANDARD = CoefficientSet.standard()


class TestContains:
    def test_finite_member(self):
        assert contains(STANDARD, F(5, 12))

    def test_family_member(self):
        assert contains(STANDARD, F(6, 7))  # 1 - 1/7

    def test_non_member(self):
        # 1/(1 - 13/29) = 29/16 is not an integer and 13/29 is not k/12
        assert not contains(STANDARD, F(13, 29))

    def test_zero_is_family_member_at_k_one(self):
        assert contains(STANDARD, F(0))

    def test_supremum_not_a_member(self):
        assert not contains(STANDARD, F(1))
        with_one = CoefficientSet((F(1),), STANDARD.families)
        assert contains(with_one, F(1))

    def test_outside_interval(self):
        assert not contains(STANDARD, F(3, 2))
        assert not contains(STANDARD, F(-1, 12))

    @given(st.integers(1, 400))
    @settings(max_examples=80, deadline=None)
    def test_family_membership_roundtrip(self, k):
        assert contains(STANDARD, 1 - F(1, k))


class TestMinPositive:
    def test_standard(self):
        assert min_positive(STANDARD) == F(1, 12)

    def test_zero_only(self):
        assert min_positive(CoefficientSet((F(0),))) is None

    def test_single_family(self):
        s = CoefficientSet((), (Family(F(1), F(1), 2),))
        assert min_positive(s) == F(1, 2)

    def test_family_with_negative_start(self):
        # c - a/k climbs through 0; first positive value wins
        s = CoefficientSet((), (Family(F(1, 3), F(1), 1),))
        assert min_positive(s) == F(1, 3) - F(1, 4)

    def test_min_positive_bounds_every_threshold_slice(self):
        floor = min_positive(STANDARD)
        rng = random.Random(5)
        for _ in range(20):
            t = F(rng.randint(1, 98), 100)
            for x in below_threshold(STANDARD, t):
                if x > 0:
                    assert x >= floor


class TestBelowThreshold:
    def test_standard_below_half(self):
        got = below_threshold(STANDARD, F(1, 2))
        assert got == [F(0)] + [F(i, 12) for i in range(1, 7)]

    def test_zero_threshold(self):
        assert below_threshold(STANDARD, F(0)) == [F(0)]
        assert below_threshold(CoefficientSet((F(1, 3),)), F(0)) == []

    def test_infinite_tail_rejected(self):
        with pytest.raises(InfiniteTailError):
            below_threshold(STANDARD, F(1))

    def test_terminates_for_random_thresholds(self):
        rng = random.Random(9)
        for _ in range(20):
            t = F(rng.randint(0, 99), 100)
            got = below_threshold(STANDARD, t)
            assert got == sorted(got)
            assert all(contains(STANDARD, x) for x in got)


class TestQuotientTransform:
    def test_single_element_set(self):
        s = CoefficientSet((F(1, 2),))
        image = hurwitz_quotient_transform(s, 1, 1, 1)
        # empty sums are admitted: m = 1 contributes 0 alongside 1/2
        assert image.values.finite_part == (F(0), F(1, 2))

    def test_empty_sum_gives_pure_quotients(self):
        s = CoefficientSet(())
        image = hurwitz_quotient_transform(s, 4, 1, 1)
        assert image.values.finite_part == (F(0), F(1, 2), F(2, 3), F(3, 4))

    def test_contains_the_set_itself(self):
        s = CoefficientSet((F(1, 3), F(2, 5)))
        image = hurwitz_quotient_transform(s, 1, 1, 1)
        for x in s.finite_part:
            assert contains(image.values, x)

    def test_output_in_unit_interval_and_flag(self):
        image = hurwitz_quotient_transform(STANDARD, 3, 2, 2, family_depth=4)
        assert all(0 <= x <= 1 for x in image.values.finite_part)
        # m ranges over all positive integers in the true image, so a
        # bounded enumeration is never complete here
        assert not image.complete

    def test_values_verify_by_recomputation(self):
        s = CoefficientSet((F(1, 2), F(1, 3)))
        image = hurwitz_quotient_transform(s, 2, 2, 2)
        pool = list(s.finite_part)
        recomputed = set()
        for m in range(1, 3):
            for n1 in range(0, 3):
                for n2 in range(0, 3):
                    total = n1 * pool[0] + n2 * pool[1]
                    if total <= 1:
                        v = 1 - (1 - total) / m
                        if 0 <= v <= 1:
                            recomputed.add(v)
        assert set(image.values.finite_part) == recomputed

    def test_bounds_validated(self):
        with pytest.raises(ValueError):
            hurwitz_quotient_transform(STANDARD, 0, 1, 1)


class TestDccChains:
    def test_reports_decreasing_run(self):
        values = [F(1), F(1, 2), F(1, 3), F(1, 4)]
        assert longest_strictly_decreasing_chain(values) == 4
        assert not is_dcc_witnessed(values, 3)
        assert is_dcc_witnessed(values, 4)

    def test_ascending_list(self):
        values = sorted(below_threshold(STANDARD, F(11, 12)))
        assert longest_strictly_decreasing_chain(values) == 1
        assert is_dcc_witnessed(values, 1)

    def test_shuffled_standard_sample(self):
        rng = random.Random(17)
        sample = below_threshold(STANDARD, F(39, 40))
        assert len(sample) > 30
        rng.shuffle(sample)
        found = longest_strictly_decreasing_chain(sample)
        assert is_dcc_witnessed(sample, found)
        assert not is_dcc_witnessed(sample, found - 1)

    def test_mixed_subsequence(self):
        values = [F(3), F(1), F(2)]
        assert longest_strictly_decreasing_chain(values) == 2


class TestValidation:
    def test_family_validation(self):
        with pytest.raises(ValueError):
            Family(F(1), F(0))
        with pytest.raises(ValueError):
            Family(F(1), F(1), 0)

    def test_finite_part_validated(self):
        with pytest.raises(ValueError):
            CoefficientSet((F(3, 2),))

    def test_finite_part_sorted_and_deduped(self):
        s = CoefficientSet((F(1, 2), F(1, 4), F(2, 4)))
        assert s.finite_part == (F(1, 4), F(1, 2))
