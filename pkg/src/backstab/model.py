"""Core game state for the Traitors game TG(n, m).

Players sit in a fixed cyclic ordering 0..n-1.  A round is a public day
vote (plurality banishment, uniform tie-break) followed by a night murder.
This module holds the labeled state (roster, public comply/punish state),
vote tallying, the Vote-Left prescription, and deviation detection.
All values are immutable; operations are pure given an RNG handle.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional


class Role(enum.Enum):
    FAITHFUL = "Faithful"
    TRAITOR = "Traitor"


class NoSuccessorError(ValueError):
    """Raised when a cyclic successor is requested with fewer than 2 alive."""


class InvalidProfileError(ValueError):
    """Raised for vote profiles that break the game rules."""


@dataclass(frozen=True)
class Roster:
    """Labeled game state: who plays, who is a Traitor, who is still alive."""

    n: int
    roles: tuple[Role, ...]
    alive: frozenset[int]

    @classmethod
    def create(cls, n: int, traitors: Iterable[int]) -> "Roster":
        traitor_set = set(traitors)
        if not traitor_set <= set(range(n)):
            raise ValueError(f"traitor indices must lie in [0, {n})")
        roles = tuple(
            Role.TRAITOR if i in traitor_set else Role.FAITHFUL for i in range(n)
        )
        return cls(n=n, roles=roles, alive=frozenset(range(n)))

    @property
    def n_alive(self) -> int:
        return len(self.alive)

    @property
    def m_alive(self) -> int:
        return sum(1 for i in self.alive if self.roles[i] is Role.TRAITOR)

    def alive_sorted(self) -> list[int]:
        return sorted(self.alive)

    def alive_faithful(self) -> list[int]:
        return sorted(i for i in self.alive if self.roles[i] is Role.FAITHFUL)

    def alive_traitors(self) -> list[int]:
        return sorted(i for i in self.alive if self.roles[i] is Role.TRAITOR)

    def without(self, player: int) -> "Roster":
        if player not in self.alive:
            raise ValueError(f"player {player} is not alive")
        return Roster(n=self.n, roles=self.roles, alive=self.alive - {player})


@dataclass(frozen=True)
class PublicState:
    """Comply/punish automaton shared by all players.

    The queue holds detected deviators awaiting forced banishment, kept
    sorted ascending by cyclic index (smallest index is punished first).
    Empty queue means comply.
    """

    queue: tuple[int, ...] = ()

    def __post_init__(self):
        if tuple(sorted(set(self.queue))) != self.queue:
            raise ValueError("punish queue must be strictly ascending")

    @property
    def punishing(self) -> bool:
        return bool(self.queue)

    @property
    def mode(self) -> str:
        return "punish" if self.queue else "comply"

    def with_deviators(self, deviators: Iterable[int]) -> "PublicState":
        return PublicState(tuple(sorted(set(self.queue) | set(deviators))))

    def purged(self, roster: Roster) -> "PublicState":
        return PublicState(tuple(i for i in self.queue if i in roster.alive))


@dataclass(frozen=True)
class TallyResult:
    counts: dict[int, int]
    tied_winners: frozenset[int]
    banished: int


def next_left(roster: Roster, i: int) -> int:
    """First alive player strictly after i in cyclic order, wrapping at n."""
    if i not in roster.alive:
        raise ValueError(f"player {i} is not alive")
    if roster.n_alive < 2:
        raise NoSuccessorError("need at least 2 alive players")
    j = (i + 1) % roster.n
    while j not in roster.alive:
        j = (j + 1) % roster.n
    return j


def prescribed_vote(state: PublicState, roster: Roster, i: int) -> int:
    """The vote the public protocol expects from player i.

    Comply: the cyclic successor.  Punish: the queue head, except that the
    head itself (who cannot self-vote) votes for its cyclic successor; with
    at least 3 alive compliers the plurality outcome is unaffected.
    """
    if i not in roster.alive:
        raise ValueError(f"player {i} is not alive")
    if not state.punishing:
        return next_left(roster, i)
    head = state.queue[0]
    if head not in roster.alive:
        raise ValueError("punish queue head is dead; purge before voting")
    if i == head:
        return next_left(roster, i)
    return head


def validate_profile(profile: Mapping[int, int], roster: Roster) -> None:
    """Reject profiles that are not a complete, legal set of alive votes."""
    for voter, target in profile.items():
        if voter not in roster.alive:
            raise InvalidProfileError(f"voter {voter} is not alive")
        if target not in roster.alive:
            raise InvalidProfileError(f"vote for dead player {target}")
        if voter == target:
            raise InvalidProfileError(f"player {voter} voted for themself")
    if set(profile) != roster.alive:
        missing = roster.alive - set(profile)
        raise InvalidProfileError(f"missing votes from {sorted(missing)}")


def tally(
    profile: Mapping[int, int],
    roster: Roster,
    extra_bloc: Optional[tuple[int, int]] = None,
) -> dict[int, int]:
    """Per-player vote counts over the alive set.

    extra_bloc=(target, size) adds a bloc of `size` votes on `target`
    without materializing the voters; the collusion enumeration uses this
    to account for the Traitor bloc.  Zero-vote alive players appear with
    count 0.
    """
    counts = {j: 0 for j in roster.alive}
    for voter, target in profile.items():
        if voter not in roster.alive:
            raise InvalidProfileError(f"voter {voter} is not alive")
        if target not in roster.alive:
            raise InvalidProfileError(f"vote for dead player {target}")
        if voter == target:
            raise InvalidProfileError(f"player {voter} voted for themself")
        counts[target] += 1
    if extra_bloc is not None:
        target, size = extra_bloc
        if target not in roster.alive:
            raise InvalidProfileError(f"bloc target {target} is not alive")
        if size < 0:
            raise InvalidProfileError("bloc size must be nonnegative")
        counts[target] += size
    return counts


def break_tie_and_banish(counts: Mapping[int, int], rng: random.Random) -> TallyResult:
    """Plurality winner with uniform random tie-breaking.

    Does not mutate any roster; the caller applies the banishment.
    """
    if not counts:
        raise ValueError("empty counts")
    top = max(counts.values())
    winners = sorted(j for j, c in counts.items() if c == top)
    banished = winners[rng.randrange(len(winners))]
    return TallyResult(
        counts=dict(counts), tied_winners=frozenset(winners), banished=banished
    )


def detect_deviators(
    profile: Mapping[int, int], state: PublicState, roster: Roster
) -> list[int]:
    """All voters whose vote differs from the prescription, ascending."""
    validate_profile(profile, roster)
    return [
        i
        for i in sorted(profile)
        if profile[i] != prescribed_vote(state, roster, i)
    ]


def win_check(roster: Roster) -> Optional[Role]:
    """Winner if the game is over: Traitors at parity, Faithful at m_t = 0."""
    m_t = roster.m_alive
    if m_t == 0:
        return Role.FAITHFUL
    if 2 * m_t >= roster.n_alive:
        return Role.TRAITOR
    return None
