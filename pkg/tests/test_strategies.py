import random
from collections import Counter

import pytest

from backstab.model import PublicState, Role, Roster, detect_deviators, next_left
from backstab.strategies import (
    RoundContext,
    StrategyProfile,
    choose_murder_target,
    decide_vote,
    pick_collusion_target,
)


def roster_with(n, traitors, alive=None):
    roster = Roster.create(n, traitors=traitors)
    if alive is not None:
        roster = Roster(n=n, roles=roster.roles, alive=frozenset(alive))
    return roster


def make_ctx(roster, queue=(), target=None, punish_compliance=False):
    return RoundContext(
        roster=roster,
        public_state=PublicState(queue),
        collusion_target=target,
        punish_compliance=punish_compliance,
    )


class TestTargetSelection:
    def test_last_faithful_is_forced(self):
        roster = roster_with(4, traitors={0, 1}, alive={0, 1, 3})
        assert pick_collusion_target(roster, random.Random(0)) == 3
        assert choose_murder_target(roster, random.Random(0)) == 3

    def test_uniform_over_alive_faithful(self):
        roster = roster_with(7, traitors={0, 2, 3, 5}, alive={0, 1, 3, 4, 5, 6})
        faithful = {1, 4, 6}
        rng = random.Random(42)
        n_draws = 90_000
        freq = Counter(pick_collusion_target(roster, rng) for _ in range(n_draws))
        assert set(freq) == faithful
        sigma = (n_draws * (1 / 3) * (2 / 3)) ** 0.5
        for j in faithful:
            assert abs(freq[j] - n_draws / 3) < 4 * sigma

    def test_murder_is_uniform_and_never_a_traitor(self):
        roster = roster_with(6, traitors={1, 2})
        rng = random.Random(9)
        n_draws = 40_000
        freq = Counter(choose_murder_target(roster, rng) for _ in range(n_draws))
        assert set(freq) <= {0, 3, 4, 5}
        sigma = (n_draws * 0.25 * 0.75) ** 0.5
        for j in (0, 3, 4, 5):
            assert abs(freq[j] - n_draws / 4) < 4 * sigma

    def test_no_faithful_is_an_error(self):
        roster = roster_with(3, traitors={0, 1, 2})
        with pytest.raises(ValueError):
            pick_collusion_target(roster, random.Random(0))


class TestDecideVote:
    def test_vl_comp_follows_prescription(self):
        roster = roster_with(8, traitors={1, 4})
        ctx = make_ctx(roster)
        assert decide_vote(StrategyProfile.VL_COMP, Role.FAITHFUL, 6, ctx, random.Random(0)) == 7

    def test_vl_comp_whole_round_is_clean(self):
        roster = roster_with(8, traitors={1, 4})
        ctx = make_ctx(roster, queue=(3,))
        rng = random.Random(5)
        votes = {
            i: decide_vote(StrategyProfile.VL_COMP, roster.roles[i], i, ctx, rng)
            for i in roster.alive_sorted()
        }
        assert detect_deviators(votes, ctx.public_state, roster) == []

    def test_vl_opt_complies_above_threshold(self):
        roster = roster_with(7, traitors={2, 5})  # 7 > 2*2 + 2
        ctx = make_ctx(roster, target=0)
        vote = decide_vote(StrategyProfile.VL_OPT, Role.TRAITOR, 2, ctx, random.Random(0))
        assert vote == next_left(roster, 2)

    def test_vl_opt_colludes_at_threshold(self):
        roster = roster_with(7, traitors={2, 5}, alive={0, 1, 2, 3, 5, 6})  # 6 <= 6
        ctx = make_ctx(roster, target=1)
        assert decide_vote(StrategyProfile.VL_OPT, Role.TRAITOR, 2, ctx, random.Random(0)) == 1

    def test_vl_c_colludes_even_in_punish_rounds(self):
        roster = roster_with(8, traitors={1, 4})
        ctx = make_ctx(roster, queue=(4,), target=0)
        assert decide_vote(StrategyProfile.VL_C, Role.TRAITOR, 1, ctx, random.Random(0)) == 0

    def test_vl_c_punish_compliance_switch(self):
        roster = roster_with(8, traitors={1, 4})
        ctx = make_ctx(roster, queue=(6,), target=0, punish_compliance=True)
        assert decide_vote(StrategyProfile.VL_C, Role.TRAITOR, 1, ctx, random.Random(0)) == 6

    def test_rvc_traitor_votes_are_all_equal(self):
        roster = roster_with(9, traitors={0, 3, 7})
        ctx = make_ctx(roster, target=5)
        rng = random.Random(11)
        votes = {
            t: decide_vote(StrategyProfile.RVC, Role.TRAITOR, t, ctx, rng)
            for t in roster.alive_traitors()
        }
        assert set(votes.values()) == {5}

    @pytest.mark.parametrize("profile", list(StrategyProfile))
    def test_never_self_or_dead(self, profile):
        rng = random.Random(77)
        for _ in range(300):
            n = rng.randrange(4, 10)
            traitors = set(rng.sample(range(n), rng.randrange(1, n // 2 + 1)))
            alive = set(rng.sample(range(n), rng.randrange(3, n + 1)))
            roster = roster_with(n, traitors, alive)
            if not roster.alive_faithful():
                continue
            queue = ()
            if rng.random() < 0.5:
                queue = (rng.choice(sorted(alive)),)
            ctx = make_ctx(
                roster,
                queue=queue,
                target=roster.alive_faithful()[0],
                punish_compliance=rng.random() < 0.5,
            )
            for voter in roster.alive_sorted():
                vote = decide_vote(profile, roster.roles[voter], voter, ctx, rng)
                assert vote != voter
                assert vote in roster.alive
