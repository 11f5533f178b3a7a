import math
from fractions import Fraction

import pytest

from backstab import exact
from backstab.exact import (
    EnumerationCapExceededError,
    p_faithful_collusion,
    p_faithful_collusion_mc,
    w_random,
    w_rvc,
    w_vlopt,
)

from reference import (
    p_faithful_bruteforce,
    w_random_plain,
    w_rvc_bruteforce,
    w_vlopt_plain,
)


class TestWRandom:
    def test_published_exact_anchors(self):
        assert w_random(25, 3) == Fraction(2110959, 3380195)
        assert w_random(22, 4) == Fraction(311471, 360448)

    def test_boundaries(self):
        assert w_random(9, 0) == 0
        assert w_random(4, 2) == 1

    def test_hand_unrolled_values(self):
        assert w_random(3, 1) == Fraction(2, 3)
        assert w_random(7, 2) == Fraction(27, 35)

    def test_denominator_is_exact(self):
        assert w_random(25, 3).denominator == 3380195

    def test_invalid_state_rejected(self):
        with pytest.raises(ValueError):
            w_random(3, 4)

    def test_matches_unmemoized_recursion(self):
        for n in range(0, 16):
            for m in range(0, n + 1):
                assert w_random(n, m) == w_random_plain(n, m)

    def test_memo_survives_clearing(self):
        before = w_random(19, 3)
        exact.clear_memos()
        assert w_random(19, 3) == before


class TestWVlopt:
    def test_late_game_boundary(self):
        assert w_vlopt(11, 5) == 1
        assert w_vlopt(5, 2) == 1

    def test_zero_traitors_wins_over_boundary(self):
        # the m = 0 case precedes n <= 2m + 2
        assert w_vlopt(3, 0) == 0
        assert w_vlopt(2, 0) == 0

    def test_hand_unrolled_values(self):
        assert w_vlopt(5, 1) == Fraction(4, 5)
        assert w_vlopt(7, 2) == Fraction(33, 35)
        assert w_vlopt(9, 3) == Fraction(103, 105)

    def test_matches_unmemoized_recursion(self):
        for n in range(0, 16):
            for m in range(0, n + 1):
                assert w_vlopt(n, m) == w_vlopt_plain(n, m)


class TestCollusionEnumeration:
    def test_two_player_tie(self):
        assert p_faithful_collusion(2, 1) == Fraction(1, 2)

    def test_three_player_hand_enumeration(self):
        # 4 profiles: {v0 in {1,2}} x {v1 in {0,2}}; contributions 1, 2/3, 1, 0
        assert p_faithful_collusion(3, 1) == Fraction(2, 3)

    def test_five_two_pinned_by_bruteforce(self):
        assert p_faithful_collusion(5, 2) == Fraction(55, 64)
        assert Fraction(3, 5) <= Fraction(55, 64) <= 1

    @pytest.mark.parametrize(
        "n,m",
        [(2, 1), (3, 1), (4, 1), (5, 1), (3, 2), (4, 2), (5, 2), (6, 2),
         (4, 3), (5, 3), (6, 3), (7, 3), (7, 2)],
    )
    def test_agrees_with_bruteforce_oracle(self, n, m):
        assert p_faithful_collusion(n, m) == p_faithful_bruteforce(n, m)

    def test_partition_invariance(self):
        expected = p_faithful_collusion(7, 2)
        for partitions in (2, 3, 7, 16):
            exact._pf_memo.clear()
            assert p_faithful_collusion(7, 2, partitions=partitions) == expected

    def test_cap_refusal_reports_omega(self):
        with pytest.raises(EnumerationCapExceededError) as err:
            p_faithful_collusion(20, 3, cap=10**6)
        assert err.value.omega == 19**17

    def test_at_least_uniform_probability_on_grid(self):
        # flagged if violated rather than assumed: p >= (n - m) / n
        for n in range(2, 9):
            for m in range(1, n):
                if (n - 1) ** (n - m) <= 10**6:
                    assert p_faithful_collusion(n, m) >= Fraction(n - m, n)

    def test_invalid_states_rejected(self):
        with pytest.raises(ValueError):
            p_faithful_collusion(5, 0)
        with pytest.raises(ValueError):
            p_faithful_collusion(5, 5)


class TestCollusionMonteCarlo:
    def test_deterministic_given_seed(self):
        assert p_faithful_collusion_mc(2, 1, 10, 99) == p_faithful_collusion_mc(2, 1, 10, 99)

    def test_matches_exact_within_4_sigma(self):
        samples = 10**6
        for n, m in [(3, 1), (5, 2), (7, 3)]:
            p = float(p_faithful_collusion(n, m))
            estimate, _ = p_faithful_collusion_mc(n, m, samples, seed=1234)
            sigma = math.sqrt(p * (1 - p) / samples)
            assert abs(estimate - p) <= 4 * sigma + 1e-12

    def test_large_state_sanity_band(self):
        estimate, _ = p_faithful_collusion_mc(20, 3, 10**5, seed=5)
        assert 0.85 <= estimate <= 1.0


class TestWRvc:
    def test_boundaries(self):
        assert w_rvc(4, 2) == 1
        assert w_rvc(6, 0) == 0

    def test_matches_bruteforce_recurrence(self):
        for n, m in [(3, 1), (5, 1), (5, 2), (7, 2), (7, 3)]:
            assert w_rvc(n, m) == w_rvc_bruteforce(n, m)

    def test_table_decimals_small_block(self):
        assert round(float(w_rvc(7, 2)), 3) == 0.896
        assert round(float(w_rvc(9, 3)), 3) == 0.995

    def test_cap_propagates(self):
        with pytest.raises(EnumerationCapExceededError):
            w_rvc(20, 3, cap=10**6)


class TestGridProperties:
    def test_values_in_unit_interval(self):
        for n in range(0, 31):
            for m in range(0, n + 1):
                for fn in (w_random, w_vlopt):
                    assert 0 <= fn(n, m) <= 1

    def test_rvc_in_unit_interval_on_enumerable_grid(self):
        for n in range(0, 10):
            for m in range(0, n + 1):
                assert 0 <= w_rvc(n, m) <= 1

    def test_w_random_nondecreasing_in_m(self):
        for n in range(1, 31):
            for m in range(0, n):
                assert w_random(n, m + 1) >= w_random(n, m)

    def test_vlopt_dominates_random_play(self):
        for n in range(0, 31):
            for m in range(0, n + 1):
                assert w_vlopt(n, m) >= w_random(n, m)
