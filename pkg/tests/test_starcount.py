import itertools
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from choiceless.starcount import (
    LemmaReport,
    check_divisibility_lemma,
    check_identity_2,
    check_star_gap,
    check_star_gap_range,
    check_t_parity,
    inner_sum,
    is_power_of_two,
    parity_law_report,
    scan_pow2,
    star,
    star_by_factorial_sum,
    star_mod,
    star_mod_stream,
    star_stream,
    sweep_identity_2,
    t_sum,
)


def count_injective_sequences(n):
    """Oracle: literally enumerate every sequence without repetition."""
    items = range(n)
    return sum(1 for length in range(n + 1)
               for _ in itertools.permutations(items, length))


class TestStar:
    def test_quoted_values(self):
        assert star(0) == 1
        assert star(1) == 2
        assert star(2) == 5
        assert star(3) == 16
        assert star(16) == 56874039553217

    def test_brute_force_count(self):
        for n in range(8):
            assert star(n) == count_injective_sequences(n)

    def test_matches_factorial_sum(self):
        for n in range(301):
            assert star(n) == star_by_factorial_sum(n)

    def test_recurrence_shape(self):
        prev = star(0)
        for n, value in star_stream(100):
            if n:
                assert value == n * prev + 1
                prev = value

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            star(-1)


class TestStarMod:
    def test_examples(self):
        assert star_mod(3, 16) == 0
        assert star_mod(0, 2) == 1
        assert star_mod(19, 16) == 0
        assert star(19) % 16 == 0

    def test_matches_exact(self):
        values = dict(star_stream(2000))
        for r in (1, 2, 5, 9, 16):
            modulus = 1 << r
            for n, residue in star_mod_stream(modulus, 2000):
                assert residue == values[n] % modulus

    def test_rejects_bad_modulus(self):
        for modulus in (0, 1, 3, 12, -8):
            with pytest.raises(ValueError):
                star_mod(5, modulus)

    @given(st.integers(min_value=0, max_value=400), st.integers(min_value=1, max_value=12))
    @settings(max_examples=80, deadline=None)
    def test_consistency_property(self, n, r):
        assert star_mod(n, 1 << r) == star(n) % (1 << r)


class TestParityLaw:
    def test_holds_to_ten_thousand(self):
        assert parity_law_report(10 ** 4).status == "confirmed"


class TestScanPow2:
    def test_small_limits(self):
        assert scan_pow2(3).details["hits"] == [0, 1, 3]
        assert scan_pow2(100).details["hits"] == [0, 1, 3]

    def test_no_new_hits_to_hundred_thousand(self):
        report = scan_pow2(100000)
        assert report.details["hits"] == [0, 1, 3]
        assert report.details["exact_escalations"] == []

    def test_single_bit_helper(self):
        assert is_power_of_two(1) and is_power_of_two(16)
        assert not is_power_of_two(0) and not is_power_of_two(65)


class TestDivisibilityLemma:
    def test_r4_premises_to_hundred(self):
        report = check_divisibility_lemma(4, 100)
        assert report.status == "confirmed"
        assert report.details["premise_first"] == [3, 19, 35, 51, 67, 83, 99]

    def test_r1_premise_is_odd_n(self):
        values = dict(star_stream(50))
        for n in range(51):
            assert (values[n] % 2 == 0) == (n % 2 == 1)
        assert check_divisibility_lemma(1, 50).status == "confirmed"

    def test_first_premise_r4(self):
        report = check_divisibility_lemma(4, 3)
        assert report.details["premise_first"] == [3]

    def test_all_r_to_ten_thousand(self):
        for r in (1, 2, 3, 4):
            assert check_divisibility_lemma(r, 10 ** 4).status == "confirmed"

    def test_r_bounds(self):
        with pytest.raises(ValueError):
            check_divisibility_lemma(5, 10)


class TestIdentity2:
    def test_examples(self):
        assert check_identity_2(3, 4).status == "confirmed"
        assert check_identity_2(5, 2).status == "confirmed"

    def test_sweep(self):
        assert sweep_identity_2(50, 8).status == "confirmed"

    def test_inner_sum_is_integer_sum(self):
        # oracle: rational accumulation must come out integral
        from fractions import Fraction
        for n in (4, 7, 10):
            for j in range(n):
                exact = sum(Fraction(factorial(n), i * factorial(j))
                            for i in range(j + 1, n + 1))
                assert exact.denominator == 1
                assert inner_sum(n, j) == exact

    def test_t_sum_small(self):
        assert t_sum(3) % 2 == 1

    def test_preconditions(self):
        with pytest.raises(ValueError):
            check_identity_2(1, 4)
        with pytest.raises(ValueError):
            check_identity_2(4, 1)


class TestTParity:
    def test_example_five(self):
        report = check_t_parity(5)
        assert report.status == "confirmed"
        assert report.details["odd_at"] == [2, 3, 4]

    def test_small_odd(self):
        assert check_t_parity(3).status == "confirmed"
        assert check_t_parity(7).status == "confirmed"

    def test_odd_range(self):
        for n in range(3, 50, 2):
            assert check_t_parity(n).status == "confirmed"
            assert t_sum(n) % 2 == 1

    def test_rejects_even(self):
        with pytest.raises(ValueError):
            check_t_parity(6)


class TestStarGap:
    def test_vacuous_range_after_three(self):
        report = check_star_gap_range(3, 2000)
        assert report.status == "vacuous"
        assert report.details["power_of_two_at_t"] == []

    def test_confirmed_pairs(self):
        assert check_star_gap(1, 2).status == "confirmed"
        assert check_star_gap(0, 1).status == "confirmed"

    def test_precondition(self):
        with pytest.raises(ValueError):
            check_star_gap(2, 1)  # star(2) = 5


class TestReportShape:
    def test_as_dict_keys(self):
        report = check_identity_2(3, 4)
        data = report.as_dict()
        assert set(data) >= {"claim", "range", "status"}
        assert isinstance(report, LemmaReport)
