"""Monte Carlo simulation of complete games of TG(n, m).

``run_game`` plays a single game in pure Python on the model/strategy
types, recording an optional per-round trace; it is the readable reference
for the round structure.  ``run_batch`` aggregates many games through the
compiled kernel (identical logic, see ``_kernels``) with per-game seeds
derived from a master seed, so results are bit-identical for any worker
count or chunking.
"""

from __future__ import annotations

import enum
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np
from typing import Optional

from . import _kernels
from .model import (
    PublicState,
    Role,
    Roster,
    break_tie_and_banish,
    detect_deviators,
    tally,
    win_check,
)
from .stats import wilson
from .strategies import (
    RoundContext,
    StrategyProfile,
    choose_murder_target,
    decide_vote,
    pick_collusion_target,
)


class PunishTiming(enum.Enum):
    #: deviators enter the punish queue effective from the next day phase
    NEXT_ROUND = "next-round"
    #: the tainted tally is discarded and a punishment revote runs at once
    SAME_ROUND = "same-round"


_PROFILE_CODE = {
    StrategyProfile.RV: _kernels.RV,
    StrategyProfile.RVC: _kernels.RVC,
    StrategyProfile.VL_COMP: _kernels.VL_COMP,
    StrategyProfile.VL_C: _kernels.VL_C,
    StrategyProfile.VL_OPT: _kernels.VL_OPT,
}
_TIMING_CODE = {
    PunishTiming.NEXT_ROUND: _kernels.NEXT_ROUND,
    PunishTiming.SAME_ROUND: _kernels.SAME_ROUND,
}


@dataclass(frozen=True)
class GameConfig:
    n: int
    m: int
    profile: StrategyProfile
    punish_timing: PunishTiming = PunishTiming.NEXT_ROUND
    punish_compliance: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.n < 2 or not (1 <= self.m < self.n):
            raise ValueError(f"need n >= 2 and 1 <= m < n, got (n={self.n}, m={self.m})")


@dataclass(frozen=True)
class RoundRecord:
    round_index: int
    n_alive: int
    m_alive: int
    public_queue: tuple[int, ...]
    banished: int
    banished_role: Role
    deviators: tuple[int, ...]
    murdered: Optional[int]


@dataclass(frozen=True)
class GameOutcome:
    winner: Role
    rounds_played: int
    trace: Optional[tuple[RoundRecord, ...]] = None


@dataclass(frozen=True)
class BatchResult:
    config: GameConfig
    num_games: int
    traitor_wins: int
    faithful_wins: int
    traitor_win_rate: float
    wilson_low: float
    wilson_high: float


derive_game_seed = _kernels.derive_game_seed


def run_game(config: GameConfig, game_seed: int, trace: bool = False) -> GameOutcome:
    """Play one full game; deterministic given (config, game_seed).

    Round structure: pre-day parity/elimination win check; day vote with
    deviation detection and punishment for Vote-Left profiles; banishment
    and post-banishment win check; night murder of a random Faithful.
    The round guard turns any non-terminating state into an error.
    """
    rng = random.Random(game_seed)
    roster = Roster.create(config.n, traitors=rng.sample(range(config.n), config.m))
    state = PublicState()
    profile = config.profile
    records: list[RoundRecord] = []
    rounds_played = 0
    for _ in range(config.n + 1):
        winner = win_check(roster)
        if winner is not None:
            return GameOutcome(winner, rounds_played, tuple(records) if trace else None)
        state = state.purged(roster)
        pre_n, pre_m, pre_queue = roster.n_alive, roster.m_alive, state.queue
        # day phase: the VL_OPT threshold is read before any banishment
        deviation_regime = roster.n_alive <= 2 * roster.m_alive + 2
        needs_target = profile is StrategyProfile.RVC or profile is StrategyProfile.VL_C or (
            profile is StrategyProfile.VL_OPT and deviation_regime
        )
        ctx = RoundContext(
            roster=roster,
            public_state=state,
            collusion_target=pick_collusion_target(roster, rng) if needs_target else None,
            punish_compliance=config.punish_compliance,
        )
        votes = {
            i: decide_vote(profile, roster.roles[i], i, ctx, rng)
            for i in roster.alive_sorted()
        }
        deviators = detect_deviators(votes, state, roster) if profile.vote_left_family else []
        if config.punish_timing is PunishTiming.SAME_ROUND and deviators:
            # discard the tainted tally and hold an immediate punishment
            # revote against the smallest-index deviator; the revote itself
            # is not re-inspected for deviations
            revote_state = PublicState((deviators[0],))
            revote_ctx = RoundContext(
                roster=roster,
                public_state=revote_state,
                collusion_target=(
                    pick_collusion_target(roster, rng) if needs_target else None
                ),
                punish_compliance=config.punish_compliance,
            )
            votes = {
                i: decide_vote(profile, roster.roles[i], i, revote_ctx, rng)
                for i in roster.alive_sorted()
            }
        result = break_tie_and_banish(tally(votes, roster), rng)
        state = state.with_deviators(deviators)
        roster = roster.without(result.banished)
        state = state.purged(roster)
        rounds_played += 1
        winner = win_check(roster)
        murdered: Optional[int] = None
        if winner is None:
            # night phase: the post-banishment win check guarantees at
            # least one alive Traitor and one alive Faithful here
            murdered = choose_murder_target(roster, rng)
            roster = roster.without(murdered)
            state = state.purged(roster)
        if trace:
            records.append(
                RoundRecord(
                    round_index=rounds_played - 1,
                    n_alive=pre_n,
                    m_alive=pre_m,
                    public_queue=pre_queue,
                    banished=result.banished,
                    banished_role=roster.roles[result.banished],
                    deviators=tuple(deviators),
                    murdered=murdered,
                )
            )
        if winner is not None:
            return GameOutcome(winner, rounds_played, tuple(records) if trace else None)
    raise RuntimeError(f"game from (n={config.n}, m={config.m}) exceeded the round guard")


def _batch_range(args) -> int:
    n, m, profile_code, timing_code, punish_compliance, master_seed, start, stop = args
    return int(
        _kernels.run_batch_range(
            n,
            m,
            profile_code,
            timing_code,
            punish_compliance,
            np.uint64(master_seed),
            start,
            stop,
        )
    )


def run_batch(
    config: GameConfig,
    num_games: int,
    master_seed: Optional[int] = None,
    workers: int = 1,
) -> BatchResult:
    """Aggregate `num_games` independent games into win rates.

    Each game's seed is a pure function of (master_seed, game index), so
    splitting the index range across workers cannot change the result.
    """
    if num_games < 1:
        raise ValueError("num_games must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if master_seed is None:
        master_seed = config.seed
    master_seed &= 0xFFFFFFFFFFFFFFFF
    tasks = [
        (
            config.n,
            config.m,
            _PROFILE_CODE[config.profile],
            _TIMING_CODE[config.punish_timing],
            config.punish_compliance,
            master_seed,
            num_games * k // workers,
            num_games * (k + 1) // workers,
        )
        for k in range(workers)
        if num_games * k // workers < num_games * (k + 1) // workers
    ]
    if workers == 1:
        wins_parts = [_batch_range(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            wins_parts = list(pool.map(_batch_range, tasks))
    traitor_wins = sum(wins_parts)
    interval = wilson(traitor_wins, num_games)
    return BatchResult(
        config=config,
        num_games=num_games,
        traitor_wins=traitor_wins,
        faithful_wins=num_games - traitor_wins,
        traitor_win_rate=traitor_wins / num_games,
        wilson_low=interval.low,
        wilson_high=interval.high,
    )
