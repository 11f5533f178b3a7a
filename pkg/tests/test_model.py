import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from backstab.model import (
    InvalidProfileError,
    NoSuccessorError,
    PublicState,
    Role,
    Roster,
    break_tie_and_banish,
    detect_deviators,
    next_left,
    prescribed_vote,
    tally,
    win_check,
)


def ring(n, alive=None, traitors=()):
    roster = Roster.create(n, traitors=traitors)
    if alive is not None:
        roster = Roster(n=n, roles=roster.roles, alive=frozenset(alive))
    return roster


class TestNextLeft:
    def test_dense_ring(self):
        assert next_left(ring(8), 3) == 4

    def test_wraparound_over_dead(self):
        assert next_left(ring(8, alive={0, 2, 5}), 5) == 0

    def test_skips_dead(self):
        assert next_left(ring(8, alive={0, 2, 5}), 2) == 5

    def test_requires_two_alive(self):
        with pytest.raises(NoSuccessorError):
            next_left(ring(3, alive={1}), 1)

    def test_dead_caller_rejected(self):
        with pytest.raises(ValueError):
            next_left(ring(4, alive={0, 1}), 3)

    @given(
        n=st.integers(2, 12),
        data=st.data(),
    )
    def test_single_cycle_property(self, n, data):
        alive = data.draw(
            st.sets(st.integers(0, n - 1), min_size=2, max_size=n)
        )
        roster = ring(n, alive=alive)
        start = min(alive)
        seen = [start]
        j = next_left(roster, start)
        while j != start:
            seen.append(j)
            j = next_left(roster, j)
        # iterating the successor visits every alive player exactly once
        assert sorted(seen) == sorted(alive)


class TestPrescribedVote:
    def test_comply_votes_left(self):
        assert prescribed_vote(PublicState(), ring(8), 6) == 7

    def test_punish_votes_queue_head(self):
        assert prescribed_vote(PublicState((4,)), ring(8), 1) == 4

    def test_queue_head_votes_left_instead_of_self(self):
        roster = ring(8)
        assert prescribed_vote(PublicState((4,)), roster, 4) == next_left(roster, 4)

    def test_dead_head_rejected(self):
        with pytest.raises(ValueError):
            prescribed_vote(PublicState((3,)), ring(8, alive={0, 1, 2}), 1)


class TestPublicState:
    def test_queue_must_be_ascending(self):
        with pytest.raises(ValueError):
            PublicState((4, 2))

    def test_merge_keeps_order_and_dedupes(self):
        state = PublicState((2, 5)).with_deviators([1, 5])
        assert state.queue == (1, 2, 5)

    def test_purge_drops_dead(self):
        state = PublicState((2, 5)).purged(ring(8, alive={0, 5, 7}))
        assert state.queue == (5,)
        assert PublicState((2,)).purged(ring(8, alive={0, 5})).mode == "comply"


class TestTally:
    def test_compliance_gives_every_player_one_vote(self):
        roster = ring(8)
        profile = {i: next_left(roster, i) for i in range(8)}
        assert tally(profile, roster) == {i: 1 for i in range(8)}

    def test_single_redirect_breaks_uniform_count(self):
        # one voter on the 8-ring redirects from player 0 to player 2
        roster = ring(8)
        profile = {i: next_left(roster, i) for i in range(8)}
        profile[7] = 2
        counts = tally(profile, roster)
        assert counts[0] == 0
        assert counts[2] == 2

    def test_extra_bloc(self):
        roster = ring(3)
        counts = tally({0: 1, 1: 0}, roster, extra_bloc=(0, 1))
        assert counts == {0: 2, 1: 1, 2: 0}

    def test_self_vote_rejected(self):
        with pytest.raises(InvalidProfileError):
            tally({0: 0}, ring(3))

    def test_vote_for_dead_rejected(self):
        with pytest.raises(InvalidProfileError):
            tally({0: 2}, ring(3, alive={0, 1}))


class TestBreakTie:
    def test_clear_winner(self):
        result = break_tie_and_banish({0: 2, 1: 1}, random.Random(0))
        assert result.banished == 0
        assert result.tied_winners == {0}

    def test_two_way_tie_members(self):
        result = break_tie_and_banish({0: 1, 1: 1, 2: 0}, random.Random(1))
        assert result.tied_winners == {0, 1}
        assert result.banished in {0, 1}

    def test_empty_counts_rejected(self):
        with pytest.raises(ValueError):
            break_tie_and_banish({}, random.Random(0))

    def test_fixed_seed_is_deterministic(self):
        draws = [
            break_tie_and_banish({0: 1, 1: 1, 2: 1}, random.Random(7)).banished
            for _ in range(20)
        ]
        assert len(set(draws)) == 1

    def test_tiebreak_is_uniform(self):
        rng = random.Random(123)
        n_draws = 100_000
        freq = Counter(
            break_tie_and_banish({0: 1, 1: 1, 2: 1}, rng).banished
            for _ in range(n_draws)
        )
        # each frequency within 4 sigma of 1/3
        sigma = (n_draws * (1 / 3) * (2 / 3)) ** 0.5
        for j in range(3):
            assert abs(freq[j] - n_draws / 3) < 4 * sigma


class TestDetectDeviators:
    def _compliance(self, roster):
        return {i: next_left(roster, i) for i in roster.alive_sorted()}

    def test_full_compliance_is_clean(self):
        roster = ring(8, traitors={1, 4})
        assert detect_deviators(self._compliance(roster), PublicState(), roster) == []

    def test_single_deviation_identified(self):
        roster = ring(8, traitors={1, 4})
        profile = self._compliance(roster)
        profile[4] = 2
        assert detect_deviators(profile, PublicState(), roster) == [4]

    def test_multiple_deviators_ascending(self):
        roster = ring(8, traitors={1, 4})
        profile = self._compliance(roster)
        profile[4] = 2
        profile[1] = 6
        assert detect_deviators(profile, PublicState(), roster) == [1, 4]

    @given(n=st.integers(3, 9), data=st.data())
    @settings(max_examples=50)
    def test_empty_iff_prescribed(self, n, data):
        roster = ring(n, traitors={0})
        state = PublicState()
        profile = self._compliance(roster)
        mutate = data.draw(st.booleans())
        if mutate:
            voter = data.draw(st.integers(0, n - 1))
            options = [
                j for j in range(n) if j != voter and j != profile[voter]
            ]
            profile[voter] = data.draw(st.sampled_from(options))
        deviators = detect_deviators(profile, state, roster)
        prescribed = {
            i: prescribed_vote(state, roster, i) for i in roster.alive_sorted()
        }
        assert (deviators == []) == (profile == prescribed)


class TestWinCheck:
    def test_parity_is_traitor_win(self):
        assert win_check(ring(8, alive={0, 1, 2, 3}, traitors={0, 1})) is Role.TRAITOR

    def test_no_traitors_is_faithful_win(self):
        assert win_check(ring(5)) is Role.FAITHFUL

    def test_interior_state_continues(self):
        assert win_check(ring(7, traitors={0, 1})) is None

    def test_removing_faithful_never_unwins_traitors(self):
        for n, traitors in [(6, {0, 1, 2}), (4, {0, 1}), (8, {0, 1, 2, 3})]:
            roster = ring(n, traitors=traitors)
            assert win_check(roster) is Role.TRAITOR
            for f in roster.alive_faithful():
                assert win_check(roster.without(f)) is Role.TRAITOR
