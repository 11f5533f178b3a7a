"""Play the game, round by round, then check the simulator against theory.

The first half traces a single game of TG(9, 3) under Vote-Left with
punished collusion so you can watch the comply/punish automaton work.
The second half runs a large seeded batch and compares the measured
Traitor win rate with the exact recurrence.
"""

from backstab import (
    GameConfig,
    Role,
    StrategyProfile,
    run_batch,
    run_game,
    w_random,
)

# ----------------------------------------------------------------------
# One traced game.  VL_C Traitors collude every round, get detected,
# and face forced banishment the round after.
# ----------------------------------------------------------------------

config = GameConfig(n=9, m=3, profile=StrategyProfile.VL_C, seed=2024)
outcome = run_game(config, game_seed=7, trace=True)

print(f"one game of TG(9, 3) under {config.profile.value}:")
for rec in outcome.trace:
    role = "Traitor" if rec.banished_role is Role.TRAITOR else "Faithful"
    queue = list(rec.public_queue) or "-"
    print(
        f"  round {rec.round_index}: {rec.n_alive} alive "
        f"({rec.m_alive} Traitors), queue {queue}, "
        f"banished player {rec.banished} ({role}), "
        f"deviators {list(rec.deviators) or '-'}, "
        f"murdered {rec.murdered if rec.murdered is not None else '-'}"
    )
winner = "Traitors" if outcome.winner is Role.TRAITOR else "Faithful"
print(f"  -> {winner} win after {outcome.rounds_played} rounds")

# ----------------------------------------------------------------------
# Now the statistics.  Under full compliance the day vote banishes a
# uniformly random player, so the measured rate must match the Migdal
# recurrence; 200k games puts the Monte Carlo error near 0.001.
# ----------------------------------------------------------------------

config = GameConfig(n=9, m=3, profile=StrategyProfile.VL_COMP, seed=99)
result = run_batch(config, num_games=200_000)
exact = float(w_random(9, 3))

print(f"\nVL_COMP at (9, 3): simulated {result.traitor_win_rate:.4f}")
print(f"                   exact     {exact:.4f}")
print(f"                   Wilson 95% [{result.wilson_low:.4f}, {result.wilson_high:.4f}]")
assert result.wilson_low <= exact <= result.wilson_high

# Replaying the same seed reproduces the batch bit for bit.
again = run_batch(config, num_games=200_000)
assert again == result
print("replay with the same seed: identical result")
