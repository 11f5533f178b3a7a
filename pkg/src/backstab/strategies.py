"""Voting strategy profiles as pure decision rules.

Five profiles, named as they appear in CLI flags and output files:

* RV       -- everyone votes uniformly at random among the alive others.
* RVC      -- Faithful vote at random; Traitors bloc-vote a shared
              Faithful target drawn fresh each round.
* VL_COMP  -- everyone complies with the public Vote-Left prescription,
              including punish rounds.
* VL_C     -- Faithful comply; Traitors bloc-vote the shared target every
              round (they are detected and punished).
* VL_OPT   -- Faithful comply; Traitors comply while n_t > 2*m_t + 2 and
              switch to bloc collusion once n_t <= 2*m_t + 2, where the
              punishment threat is no longer credible.

The night murder policy is the same for all profiles: a uniformly random
alive Faithful.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Optional

from .model import PublicState, Role, Roster, prescribed_vote


class StrategyProfile(enum.Enum):
    RV = "RV"
    RVC = "RVC"
    VL_COMP = "VL_COMP"
    VL_C = "VL_C"
    VL_OPT = "VL_OPT"

    @property
    def vote_left_family(self) -> bool:
        """Profiles with a public prescription, hence detectable deviation."""
        return self in (
            StrategyProfile.VL_COMP,
            StrategyProfile.VL_C,
            StrategyProfile.VL_OPT,
        )


@dataclass(frozen=True)
class RoundContext:
    """Everything a voter may condition on in one day phase."""

    roster: Roster
    public_state: PublicState
    collusion_target: Optional[int] = None
    punish_compliance: bool = False


def pick_collusion_target(roster: Roster, rng: random.Random) -> int:
    """Shared per-round Traitor target: a uniformly random alive Faithful."""
    faithful = roster.alive_faithful()
    if not faithful:
        raise ValueError("no alive Faithful to target")
    return faithful[rng.randrange(len(faithful))]


def choose_murder_target(roster: Roster, rng: random.Random) -> int:
    """Night murder victim: a uniformly random alive Faithful."""
    if not roster.alive_traitors():
        raise ValueError("no alive Traitor to murder")
    faithful = roster.alive_faithful()
    if not faithful:
        raise ValueError("no alive Faithful to murder")
    return faithful[rng.randrange(len(faithful))]


def _random_other(roster: Roster, voter: int, rng: random.Random) -> int:
    others = [j for j in roster.alive_sorted() if j != voter]
    return others[rng.randrange(len(others))]


def decide_vote(
    profile: StrategyProfile,
    role: Role,
    voter: int,
    ctx: RoundContext,
    rng: random.Random,
) -> int:
    """One player's vote for the current day phase."""
    roster = ctx.roster
    if voter not in roster.alive:
        raise ValueError(f"voter {voter} is not alive")
    if profile is StrategyProfile.RV:
        return _random_other(roster, voter, rng)
    if profile is StrategyProfile.RVC:
        if role is Role.TRAITOR:
            return _require_target(ctx)
        return _random_other(roster, voter, rng)
    presc = prescribed_vote(ctx.public_state, roster, voter)
    if role is Role.FAITHFUL or profile is StrategyProfile.VL_COMP:
        return presc
    if profile is StrategyProfile.VL_C:
        if ctx.public_state.punishing and ctx.punish_compliance:
            return presc
        return _require_target(ctx)
    # VL_OPT: threshold read on the roster at the moment of the day vote
    if roster.n_alive <= 2 * roster.m_alive + 2:
        return _require_target(ctx)
    return presc


def _require_target(ctx: RoundContext) -> int:
    if ctx.collusion_target is None:
        raise ValueError("profile requires a collusion target this round")
    return ctx.collusion_target
