"""Aggregation helpers: Wilson intervals and Faithful win-rate ratios."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

#: two-sided 95% critical value
Z95 = 1.96


@dataclass(frozen=True)
class WilsonInterval:
    point: float
    low: float
    high: float
    z: float = Z95


def wilson(k: float, trials: int, z: float = Z95) -> WilsonInterval:
    """Wilson score interval for a binomial proportion.

    Chosen over Wald/Clopper-Pearson because it stays well-behaved at
    rates near 0 and 1, which several game configurations hit.  ``k`` may
    be fractional (sums of per-sample probabilities), in which case the
    interval is conservative.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not (0 <= k <= trials):
        raise ValueError(f"need 0 <= k <= trials, got k={k}, trials={trials}")
    p = k / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (p + z2 / (2 * trials)) / denom
    margin = (z / denom) * math.sqrt(p * (1 - p) / trials + z2 / (4 * trials * trials))
    # clamp away float noise so low <= point <= high holds exactly at the edges
    low = min(max(0.0, center - margin), p)
    high = max(min(1.0, center + margin), p)
    return WilsonInterval(point=p, low=low, high=high, z=z)


@dataclass(frozen=True)
class ExactRate:
    """An exactly-known Traitor win probability at a game configuration."""

    n: int
    m: int
    traitor_win_rate: Fraction


@dataclass(frozen=True)
class RatioPoint:
    """Faithful win-rate ratio between two strategies at one (n, m).

    ``ratio`` is None exactly when the denominator strategy records no
    Faithful wins (the plot-omission rule).
    """

    n: int
    m: int
    numerator_strategy: str
    denominator_strategy: str
    ratio: Optional[float]


RateSource = Union[ExactRate, "BatchResult"]


def _unpack(source) -> tuple[int, int, float, bool]:
    """(n, m, faithful win rate, faithful-wins-are-exactly-zero)."""
    if isinstance(source, ExactRate):
        fr = 1 - source.traitor_win_rate
        return source.n, source.m, float(fr), fr == 0
    # BatchResult (duck-typed to avoid a circular import)
    cfg = source.config
    return cfg.n, cfg.m, source.faithful_wins / source.num_games, source.faithful_wins == 0


def faithful_ratio(
    a: RateSource,
    b: RateSource,
    numerator_strategy: str = "",
    denominator_strategy: str = "",
) -> RatioPoint:
    """Ratio of Faithful win rates (1 - w_a) / (1 - w_b).

    Both operands must describe the same (n, m).  Ratios are always on
    Faithful rates, never Traitor rates.
    """
    n_a, m_a, fa, _ = _unpack(a)
    n_b, m_b, fb, b_zero = _unpack(b)
    if (n_a, m_a) != (n_b, m_b):
        raise ValueError(f"mismatched configurations ({n_a},{m_a}) vs ({n_b},{m_b})")
    ratio = None if b_zero else fa / fb
    return RatioPoint(
        n=n_a,
        m=m_a,
        numerator_strategy=numerator_strategy,
        denominator_strategy=denominator_strategy,
        ratio=ratio,
    )
