"""How likely is the banished player to be Faithful when Traitors collude?

p_faithful_collusion(n, m) enumerates every Faithful vote profile (the
Traitor bloc is folded in analytically), so the answer is an exact
fraction.  A Monte Carlo estimator covers the states the enumeration
refuses, and a partition argument shows the enumeration parallelizes
without changing a single bit of the result.
"""

from backstab import (
    EnumerationCapExceededError,
    p_faithful_collusion,
    p_faithful_collusion_mc,
)

# ----------------------------------------------------------------------
# Small states by hand.  With n = 2, m = 1 the lone Faithful votes for
# the Traitor, the Traitor votes back, and the coin flip gives 1/2.
# ----------------------------------------------------------------------

for n, m in [(2, 1), (3, 1), (4, 1), (5, 2), (7, 2)]:
    p = p_faithful_collusion(n, m)
    print(f"p_F({n}, {m}) = {p} = {float(p):.6f}")

# ----------------------------------------------------------------------
# The enumeration is an odometer over (n - 1)^(n - m) profiles and it
# refuses, rather than approximates, past the cap.
# ----------------------------------------------------------------------

try:
    p_faithful_collusion(20, 3)
except EnumerationCapExceededError as exc:
    print(f"\n(20, 3) refused: {exc.omega:.3e} profiles > cap {exc.cap:.0e}")

# Monte Carlo picks up where the enumeration stops.  The estimate comes
# with a Wilson interval and is deterministic in the seed.
estimate, ci = p_faithful_collusion_mc(20, 3, samples=200_000, seed=11)
print(f"p_F(20, 3) ~ {estimate:.5f}  (95% CI [{ci.low:.5f}, {ci.high:.5f}])")

# ----------------------------------------------------------------------
# Splitting the profile index range across workers cannot change the
# answer: partial sums are exact integers over a common denominator.
# ----------------------------------------------------------------------

from backstab.exact import _pf_memo

answers = set()
for parts in (1, 2, 5, 8):
    _pf_memo.clear()
    answers.add(p_faithful_collusion(7, 2, partitions=parts))
assert len(answers) == 1
print(f"\npartition-invariant: p_F(7, 2) = {answers.pop()} for 1/2/5/8 chunks")
