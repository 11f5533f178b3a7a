"""Compare strategies through Faithful win-rate ratios.

The headline question: how much better off are the Faithful when the
Vote-Left protocol polices collusion, compared with collusion going
undetected?  Ratios are (1 - w_a)/(1 - w_b) on Faithful win rates, with
exact values where the engine has them and simulation elsewhere.
"""

from backstab import (
    EnumerationCapExceededError,
    ExactRate,
    GameConfig,
    StrategyProfile,
    faithful_ratio,
    run_batch,
    w_random,
    w_rvc,
    w_vlopt,
)

# ----------------------------------------------------------------------
# Exact grid: VL+Opt versus the random baseline.  The ratio sits just
# below one -- optimal late-game deviation buys the Traitors a little.
# ----------------------------------------------------------------------

print("(1 - w_vlopt) / (1 - w_random), exact:")
for n, m in [(9, 3), (10, 3), (11, 3), (15, 2)]:
    a = ExactRate(n, m, w_vlopt(n, m))
    b = ExactRate(n, m, w_random(n, m))
    point = faithful_ratio(a, b, "VL_OPT", "RV")
    print(f"  ({n:2d}, {m})  ratio = {float(point.ratio):.4f}")

# ----------------------------------------------------------------------
# VL+Opt versus undetected collusion.  Where w_rvc is enumerable the
# comparison is fully exact; at m = 3 the Faithful multiply their
# chances severalfold by playing Vote-Left.
# ----------------------------------------------------------------------

print("\n(1 - w_vlopt) / (1 - w_rvc), exact where enumerable:")
for n, m in [(9, 3), (10, 3), (11, 3), (20, 3)]:
    a = ExactRate(n, m, w_vlopt(n, m))
    try:
        b = ExactRate(n, m, w_rvc(n, m))
    except EnumerationCapExceededError:
        print(f"  ({n:2d}, {m})  enumeration too large; see the simulated block")
        continue
    point = faithful_ratio(a, b, "VL_OPT", "RVC")
    print(f"  ({n:2d}, {m})  ratio = {float(point.ratio):.4f}")

# ----------------------------------------------------------------------
# Beyond the cap, both sides come from the simulator.  (20, 3) is a
# televised-size configuration.
# ----------------------------------------------------------------------

games = 200_000
sim_opt = run_batch(GameConfig(20, 3, StrategyProfile.VL_OPT, seed=5), games)
sim_rvc = run_batch(GameConfig(20, 3, StrategyProfile.RVC, seed=6), games)
point = faithful_ratio(sim_opt, sim_rvc, "VL_OPT", "RVC")
print(f"\nsimulated at (20, 3) with {games} games per side:")
print(f"  VL_OPT Traitor rate {sim_opt.traitor_win_rate:.4f}")
print(f"  RVC    Traitor rate {sim_rvc.traitor_win_rate:.4f}")
print(f"  Faithful win-rate ratio = {float(point.ratio):.2f}")
