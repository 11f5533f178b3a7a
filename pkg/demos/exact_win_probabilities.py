"""Walk through the three exact recurrences on a few game sizes.

Everything here is exact rational arithmetic -- no simulation, no
floating point until the final pretty-printing.
"""

from fractions import Fraction

from backstab import w_random, w_rvc, w_vlopt

# ----------------------------------------------------------------------
# The mutual-random-play baseline.  w(n, m) is the probability that the
# m Traitors win a game of n players when every vote is uniform.
# ----------------------------------------------------------------------

print("random play, m = 3:")
for n in range(7, 26, 2):
    w = w_random(n, 3)
    print(f"  w({n:2d}, 3) = {w} = {float(w):.6f}")

# A famous anchor: 25 players, 3 Traitors.
assert w_random(25, 3) == Fraction(2110959, 3380195)

# ----------------------------------------------------------------------
# Collusion changes the day-phase banishment odds.  The interior step of
# w_rvc replaces (n - m)/n with an enumerated banishment probability, so
# it is only available while the enumeration stays under the cap
# ((n - 1)^(n - m) profiles; n = 11 at m = 3 is the practical edge).
# ----------------------------------------------------------------------

print("\nrandom voting vs. Traitor collusion:")
for n, m in [(7, 2), (8, 2), (9, 3), (10, 3)]:
    base, coll = w_random(n, m), w_rvc(n, m)
    print(f"  ({n:2d}, {m})  w = {float(base):.4f}   w_rvc = {float(coll):.4f}")

# ----------------------------------------------------------------------
# Vote-Left with optimal deviation: Traitors comply until the late game
# (n <= 2m + 2), then collude.  Same interior recurrence as random play
# but with the absorbing boundary moved out by two players.
# ----------------------------------------------------------------------

print("\nVote-Left with optimal late-game deviation, m = 2:")
for n in range(5, 14):
    print(f"  w_vlopt({n:2d}, 2) = {w_vlopt(n, 2)}")

# The gain over the baseline is modest but always nonnegative.
for n in range(5, 30):
    for m in range(1, n // 2):
        assert w_vlopt(n, m) >= w_random(n, m)
print("\nchecked: w_vlopt >= w_random on the whole grid up to n = 29")
