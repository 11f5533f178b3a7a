"""Numba kernels: the hot loops behind the enumeration and the simulator.

Everything here mirrors the pure-Python semantics in `model`, `strategies`
and `simulate.run_game`; the kernels exist because batch sizes (1e6 games
per cell, 1e8 vote profiles) are far beyond pure-Python speed.  The RNG is
a self-contained splitmix64 stream so results are reproducible across
platforms and independent of global interpreter state.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_MASK64 = 0xFFFFFFFFFFFFFFFF
_GOLDEN = 0x9E3779B97F4A7C15

# strategy profile codes shared with simulate.py
RV, RVC, VL_COMP, VL_C, VL_OPT = 0, 1, 2, 3, 4
NEXT_ROUND, SAME_ROUND = 0, 1
_VL_FAMILY = (VL_COMP, VL_C, VL_OPT)


def mix64(x: int) -> int:
    """splitmix64 finalizer on a 64-bit value (pure-Python twin of _mix64)."""
    x &= _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D4BE0B7DCA13DB) & _MASK64
    return x ^ (x >> 31)


def derive_game_seed(master_seed: int, index: int) -> int:
    """Per-game seed as a pure function of (master seed, game index)."""
    base = mix64((master_seed & _MASK64) ^ _GOLDEN)
    return mix64((base + (index & _MASK64) * _GOLDEN + 1) & _MASK64)


@njit(cache=True, inline="always")
def _mix64(x):
    x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D4BE0B7DCA13DB)
    return x ^ (x >> np.uint64(31))


@njit(cache=True, inline="always")
def _derive_seed(master, index):
    base = _mix64(master ^ np.uint64(_GOLDEN))
    return _mix64(base + index * np.uint64(_GOLDEN) + np.uint64(1))


@njit(cache=True, inline="always")
def _next64(state):
    state[0] += np.uint64(_GOLDEN)
    return _mix64(state[0])


@njit(cache=True, inline="always")
def _randbelow(state, k):
    """Uniform draw in [0, k) via rejection sampling (no modulo bias)."""
    ku = np.uint64(k)
    top = np.uint64(0) - ku  # 2**64 - k
    while True:
        x = _next64(state)
        r = x % ku
        if x - r <= top:
            return np.int64(r)


# ---------------------------------------------------------------------------
# Exhaustive enumeration of Faithful vote profiles under bloc collusion.
#
# Faithful are players 0..f-1 with the bloc target at index 0; Traitors are
# players f..n-1 and contribute m votes on player 0.  Profiles are indexed
# 0..(n-1)**f - 1 in mixed radix base n-1: digit d of voter i maps to the
# vote d + (d >= i), skipping the self-vote.  The odometer walks an index
# range with an incremental tally, so disjoint ranges partition the sum and
# partial numerators combine exactly.
# ---------------------------------------------------------------------------


@njit(cache=True)
def collusion_numerator_range(n, m, start, stop, lcm_all):
    """Sum of |W(v) cap F| * (lcm_all / |W(v)|) over profile indices [start, stop).

    The caller divides by (n-1)**f * lcm_all to obtain the exact
    probability that the banished player is Faithful.
    """
    f = n - m
    base = n - 1
    digits = np.zeros(f, dtype=np.int64)
    counts = np.zeros(n, dtype=np.int64)
    counts[0] = m
    # decode the starting index and build its tally
    rem = start
    for i in range(f):
        d = rem % base
        rem //= base
        digits[i] = d
        v = d + 1 if d >= i else d
        counts[v] += 1
    per_tie = np.zeros(n + 1, dtype=np.int64)
    for w in range(1, n + 1):
        per_tie[w] = lcm_all // w
    total = np.int64(0)
    idx = start
    while True:
        # contribution of the current profile
        top = np.int64(0)
        for j in range(n):
            if counts[j] > top:
                top = counts[j]
        ties = 0
        faithful_ties = 0
        for j in range(n):
            if counts[j] == top:
                ties += 1
                if j < f:
                    faithful_ties += 1
        total += faithful_ties * per_tie[ties]
        idx += 1
        if idx >= stop:
            break
        # advance the odometer, updating the tally incrementally
        pos = 0
        while True:
            d = digits[pos]
            v = d + 1 if d >= pos else d
            counts[v] -= 1
            d += 1
            if d == base:
                digits[pos] = 0
                counts[1 if pos == 0 else 0] += 1
                pos += 1
            else:
                digits[pos] = d
                counts[d + 1 if d >= pos else d] += 1
                break
    return total


@njit(cache=True)
def collusion_mc_sums(n, m, samples, seed):
    """Monte Carlo twin of the enumeration: mean and raw second moment of
    the per-profile contribution |W cap F| / |W| over `samples` draws."""
    f = n - m
    base = n - 1
    state = np.zeros(1, dtype=np.uint64)
    state[0] = np.uint64(seed)
    counts = np.zeros(n, dtype=np.int64)
    total = 0.0
    total_sq = 0.0
    for _ in range(samples):
        for j in range(n):
            counts[j] = 0
        counts[0] = m
        for i in range(f):
            d = _randbelow(state, base)
            v = d + 1 if d >= i else d
            counts[v] += 1
        top = np.int64(0)
        for j in range(n):
            if counts[j] > top:
                top = counts[j]
        ties = 0
        faithful_ties = 0
        for j in range(n):
            if counts[j] == top:
                ties += 1
                if j < f:
                    faithful_ties += 1
        x = faithful_ties / ties
        total += x
        total_sq += x * x
    return total, total_sq


# ---------------------------------------------------------------------------
# Full game simulation.  One call plays a single game of TG(n, m); the
# batch kernel loops games with per-index seeds.  Logic mirrors
# simulate.run_game step for step (see that function for the commented
# round structure); trace arrays are filled only when record_trace is set.
# ---------------------------------------------------------------------------


@njit(cache=True)
def _next_alive(alive, n, i):
    j = (i + 1) % n
    while not alive[j]:
        j = (j + 1) % n
    return j


@njit(cache=True)
def _queue_head(alive, in_queue, n):
    for j in range(n):
        if alive[j] and in_queue[j]:
            return j
    return -1


@njit(cache=True)
def _prescribed(alive, n, i, head):
    if head < 0 or i == head:
        return _next_alive(alive, n, i)
    return head


@njit(cache=True)
def _pick_alive_faithful(alive, traitor, n, state):
    count = 0
    for j in range(n):
        if alive[j] and not traitor[j]:
            count += 1
    k = _randbelow(state, count)
    for j in range(n):
        if alive[j] and not traitor[j]:
            if k == 0:
                return j
            k -= 1
    return -1  # unreachable


@njit(cache=True, inline="always")
def _pick_alive_other(alive_list, pos, voter, n_alive, state):
    """Uniform alive player other than `voter`, O(1) via the compact list."""
    k = _randbelow(state, n_alive - 1)
    if k >= pos[voter]:
        k += 1
    return alive_list[k]


@njit(cache=True, inline="always")
def _remove_player(alive, alive_list, pos, n_alive, p):
    """Swap-remove from the compact alive list; returns the new count."""
    alive[p] = False
    i = pos[p]
    last = alive_list[n_alive - 1]
    alive_list[i] = last
    pos[last] = i
    return n_alive - 1


@njit(cache=True)
def _collect_votes(
    votes, alive, traitor, n, profile, head, target, punish_compliance, deviating
):
    for i in range(n):
        if not alive[i]:
            continue
        if profile == RV:
            continue  # random votes drawn by the caller (stream order)
        if profile == RVC:
            if traitor[i]:
                votes[i] = target
            continue
        presc = _prescribed(alive, n, i, head)
        if profile == VL_COMP or not traitor[i]:
            votes[i] = presc
        elif profile == VL_C:
            if head >= 0 and punish_compliance:
                votes[i] = presc
            else:
                votes[i] = target
        else:  # VL_OPT
            votes[i] = target if deviating else presc


@njit(cache=True)
def _plurality_banish(votes, alive_list, counts, n_alive, state):
    for t in range(n_alive):
        counts[alive_list[t]] = 0
    for t in range(n_alive):
        counts[votes[alive_list[t]]] += 1
    top = np.int64(0)
    for t in range(n_alive):
        c = counts[alive_list[t]]
        if c > top:
            top = c
    ties = 0
    for t in range(n_alive):
        if counts[alive_list[t]] == top:
            ties += 1
    k = _randbelow(state, ties)
    for t in range(n_alive):
        if counts[alive_list[t]] == top:
            if k == 0:
                return alive_list[t]
            k -= 1
    return -1  # unreachable


@njit(cache=True)
def play_game(
    n,
    m,
    profile,
    timing,
    punish_compliance,
    seed,
    record_trace,
    trace_pre,  # (n, 4): n_t, m_t, queue_head_or_-1, queue_len before day
    trace_day,  # (n, 3): banished, banished_is_traitor, murdered_or_-1
    trace_dev,  # (n, n): deviators per round, -1 padded
):
    """Play one game; returns (winner, rounds) with winner 1 = Traitors."""
    state = np.zeros(1, dtype=np.uint64)
    state[0] = np.uint64(seed)
    alive = np.ones(n, dtype=np.bool_)
    traitor = np.zeros(n, dtype=np.bool_)
    # uniform random Traitor placement (partial Fisher-Yates)
    perm = np.arange(n)
    for i in range(m):
        j = i + _randbelow(state, n - i)
        perm[i], perm[j] = perm[j], perm[i]
        traitor[perm[i]] = True
    in_queue = np.zeros(n, dtype=np.bool_)
    votes = np.zeros(n, dtype=np.int64)
    counts = np.zeros(n, dtype=np.int64)
    alive_list = np.arange(n)
    pos = np.arange(n)
    n_t = n
    m_t = m
    rounds = 0
    for _ in range(n + 1):
        # pre-day win check
        if m_t == 0:
            return 0, rounds
        if 2 * m_t >= n_t:
            return 1, rounds
        head = _queue_head(alive, in_queue, n)
        if record_trace:
            qlen = 0
            for j in range(n):
                if alive[j] and in_queue[j]:
                    qlen += 1
            trace_pre[rounds, 0] = n_t
            trace_pre[rounds, 1] = m_t
            trace_pre[rounds, 2] = head
            trace_pre[rounds, 3] = qlen
        # day phase
        deviating = n_t <= 2 * m_t + 2  # VL_OPT regime, read before the vote
        need_target = (
            profile == RVC or profile == VL_C or (profile == VL_OPT and deviating)
        )
        target = -1
        if need_target:
            target = _pick_alive_faithful(alive, traitor, n, state)
        if profile == RV:
            for i in range(n):
                if alive[i]:
                    votes[i] = _pick_alive_other(alive_list, pos, i, n_t, state)
        elif profile == RVC:
            for i in range(n):
                if alive[i] and not traitor[i]:
                    votes[i] = _pick_alive_other(alive_list, pos, i, n_t, state)
        _collect_votes(
            votes, alive, traitor, n, profile, head, target, punish_compliance,
            deviating,
        )
        n_dev = 0
        dev_head = -1
        if profile == VL_COMP or profile == VL_C or profile == VL_OPT:
            for i in range(n):
                if alive[i] and votes[i] != _prescribed(alive, n, i, head):
                    if record_trace:
                        trace_dev[rounds, n_dev] = i
                    if n_dev == 0:
                        dev_head = i
                    n_dev += 1
                    in_queue[i] = True
        if timing == SAME_ROUND and n_dev > 0:
            # discard the tally; immediate punishment revote against the
            # smallest-index deviator, fresh collusion target if needed
            if need_target:
                target = _pick_alive_faithful(alive, traitor, n, state)
            _collect_votes(
                votes, alive, traitor, n, profile, dev_head, target,
                punish_compliance, deviating,
            )
        banished = _plurality_banish(votes, alive_list, counts, n_t, state)
        n_t = _remove_player(alive, alive_list, pos, n_t, banished)
        in_queue[banished] = False
        if traitor[banished]:
            m_t -= 1
        rounds += 1
        if record_trace:
            trace_day[rounds - 1, 0] = banished
            trace_day[rounds - 1, 1] = 1 if traitor[banished] else 0
            trace_day[rounds - 1, 2] = -1
        # post-banishment win check
        if m_t == 0:
            return 0, rounds
        if 2 * m_t >= n_t:
            return 1, rounds
        # night phase: murder a uniformly random alive Faithful
        victim = _pick_alive_faithful(alive, traitor, n, state)
        n_t = _remove_player(alive, alive_list, pos, n_t, victim)
        in_queue[victim] = False
        if record_trace:
            trace_day[rounds - 1, 2] = victim
    return -1, rounds  # round guard tripped: logic error


@njit(cache=True)
def run_batch_range(n, m, profile, timing, punish_compliance, master_seed, start, stop):
    """Traitor wins over game indices [start, stop); seeds derived per index."""
    dummy_pre = np.zeros((1, 4), dtype=np.int64)
    dummy_day = np.zeros((1, 3), dtype=np.int64)
    dummy_dev = np.zeros((1, 1), dtype=np.int64)
    wins = 0
    for g in range(start, stop):
        seed = _derive_seed(np.uint64(master_seed), np.uint64(g))
        winner, _ = play_game(
            n, m, profile, timing, punish_compliance, seed,
            False, dummy_pre, dummy_day, dummy_dev,
        )
        if winner < 0:
            raise RuntimeError("game exceeded the round guard")
        wins += winner
    return wins
