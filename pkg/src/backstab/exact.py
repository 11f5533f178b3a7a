"""Exact rational win probabilities for the three strategy recurrences.

All values are `fractions.Fraction` in lowest terms.  Three recurrences:

* ``w_random``  -- mutual random play, the Migdal recurrence.
* ``w_rvc``     -- random voting with Traitor bloc collusion; its interior
  step uses the collusion banishment probability, computed exactly by
  exhaustive enumeration of Faithful vote profiles.
* ``w_vlopt``   -- Vote-Left with optimal late-game Traitor deviation.

Boundaries: m = 0 gives 0 (the m = 0 case wins whenever both apply);
Traitor parity (or, for w_vlopt, the late-game threshold n <= 2m + 2)
gives 1.  Each full round removes two players, stepping n by 2.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import _kernels

#: Refuse enumerations beyond this many vote profiles (overridable per call
#: or via the BACKSTAB_CAP environment variable at the CLI).
DEFAULT_CAP = 10**8

_w_random_memo: dict[tuple[int, int], Fraction] = {}
_w_vlopt_memo: dict[tuple[int, int], Fraction] = {}
_w_rvc_memo: dict[tuple[int, int], Fraction] = {}
_pf_memo: dict[tuple[int, int], Fraction] = {}


class EnumerationCapExceededError(RuntimeError):
    """The profile space is larger than the configured cap.

    Carries ``omega``, the number of profiles that would have to be
    iterated, so callers can report it or fall back to Monte Carlo.
    """

    def __init__(self, n: int, m: int, omega: int, cap: int):
        self.n, self.m, self.omega, self.cap = n, m, omega, cap
        super().__init__(
            f"enumeration for (n={n}, m={m}) needs {omega} profiles, cap is {cap}"
        )


def _check_state(n: int, m: int) -> None:
    if not (0 <= m <= n):
        raise ValueError(f"need 0 <= m <= n, got (n={n}, m={m})")


def w_random(n: int, m: int) -> Fraction:
    """Traitor win probability under mutual random play."""
    _check_state(n, m)
    if m == 0:
        return Fraction(0)
    if n <= 2 * m:
        return Fraction(1)
    key = (n, m)
    if key not in _w_random_memo:
        _w_random_memo[key] = (
            Fraction(n - m, n) * w_random(n - 2, m)
            + Fraction(m, n) * w_random(n - 2, m - 1)
        )
    return _w_random_memo[key]


def w_vlopt(n: int, m: int) -> Fraction:
    """Traitor win probability under Vote-Left with optimal deviation.

    Identical to the random-play recurrence except that every state with
    n <= 2m + 2 is absorbed into the Traitor-win boundary: once punishment
    stops being credible, full collusion forces a Faithful banishment.
    """
    _check_state(n, m)
    if m == 0:
        return Fraction(0)
    if n <= 2 * m + 2:
        return Fraction(1)
    key = (n, m)
    if key not in _w_vlopt_memo:
        _w_vlopt_memo[key] = (
            Fraction(n - m, n) * w_vlopt(n - 2, m)
            + Fraction(m, n) * w_vlopt(n - 2, m - 1)
        )
    return _w_vlopt_memo[key]


def omega_size(n: int, m: int) -> int:
    """Number of admissible Faithful vote profiles when m Traitors bloc-vote."""
    return (n - 1) ** (n - m)


def p_faithful_collusion(n: int, m: int, cap: int = DEFAULT_CAP, partitions: int = 1) -> Fraction:
    """Exact probability that the banished player is Faithful under bloc
    collusion: m Traitors all vote one Faithful target, each Faithful votes
    uniformly among the other n - 1 players, plurality with uniform
    tie-break.

    Computed by iterating every admissible Faithful vote profile with an
    incremental-odometer tally.  ``partitions`` splits the index space into
    that many independent ranges; partial sums are exact integers, so the
    result is identical for any partition count.
    """
    if not (1 <= m <= n - 1):
        raise ValueError(f"need 1 <= m <= n - 1, got (n={n}, m={m})")
    omega = omega_size(n, m)
    if omega > cap:
        # refusal is checked before the memo so a lowered cap always refuses
        raise EnumerationCapExceededError(n, m, omega, cap)
    key = (n, m)
    if key in _pf_memo:
        return _pf_memo[key]
    lcm_all = math.lcm(*range(1, n + 1))
    if partitions < 1:
        raise ValueError("partitions must be >= 1")
    bounds = [omega * k // partitions for k in range(partitions + 1)]
    numer = 0
    for lo, hi in zip(bounds, bounds[1:]):
        if lo < hi:
            numer += int(
                _kernels.collusion_numerator_range(n, m, lo, hi, lcm_all)
            )
    result = Fraction(numer, omega * lcm_all)
    _pf_memo[key] = result
    return result


def p_faithful_collusion_mc(
    n: int, m: int, samples: int, seed: int
) -> tuple[float, "WilsonInterval"]:
    """Monte Carlo estimate of the collusion banishment probability.

    Samples Faithful vote profiles uniformly and averages the per-profile
    Faithful tie share; unbiased for the exact value and deterministic
    given the seed.  Returns (estimate, 95% Wilson interval).
    """
    from .stats import wilson

    if samples < 1:
        raise ValueError("samples must be >= 1")
    if not (1 <= m <= n - 1):
        raise ValueError(f"need 1 <= m <= n - 1, got (n={n}, m={m})")
    total, _total_sq = _kernels.collusion_mc_sums(n, m, samples, seed & 0xFFFFFFFFFFFFFFFF)
    estimate = total / samples
    return estimate, wilson(total, samples)


def w_rvc(n: int, m: int, cap: int = DEFAULT_CAP) -> Fraction:
    """Traitor win probability under random voting with collusion.

    The interior step replaces the uniform banishment probability with the
    collusion banishment probability, re-evaluated at every interior state
    (the Traitors collude every round).  Raises
    EnumerationCapExceededError if any reachable state is too large.
    """
    _check_state(n, m)
    if m == 0:
        return Fraction(0)
    if n <= 2 * m:
        return Fraction(1)
    omega = omega_size(n, m)
    if omega > cap:
        # the top interior state has the largest enumeration space on the
        # chain, so checking it here refuses before touching the memo
        raise EnumerationCapExceededError(n, m, omega, cap)
    key = (n, m)
    if key not in _w_rvc_memo:
        p_f = p_faithful_collusion(n, m, cap=cap)
        _w_rvc_memo[key] = p_f * w_rvc(n - 2, m, cap=cap) + (1 - p_f) * w_rvc(
            n - 2, m - 1, cap=cap
        )
    return _w_rvc_memo[key]


def clear_memos() -> None:
    """Drop all cached recurrence values (mainly for tests)."""
    _w_random_memo.clear()
    _w_vlopt_memo.clear()
    _w_rvc_memo.clear()
    _pf_memo.clear()
