"""Unconstrained learning: hints as extra betting directions.

Each hint gets a one-dimensional coin bettor.  When a hint is reliable its
bettor compounds wealth geometrically, which is great for regret but soon
exceeds what float64 can hold; the bettor then raises OverflowError instead
of returning garbage.
"""

import numpy as np

from olohints import UnconstrainedHints, ScenarioSpec, generate, make_rng, play

# a hint that is always exactly right: wealth roughly doubles every round
rng = make_rng(0)
c = rng.standard_normal((2048, 3))
c /= np.linalg.norm(c, axis=1, keepdims=True)
lr = UnconstrainedHints(3, 1)
try:
    play(lr, c, c[:, None, :])
except OverflowError as exc:
    print(f"perfect hint: {exc}")
print(f"after {lr.ledger.rounds} rounds the cumulative cost is {lr.ledger.cumulative_cost:.3e}")

# two opposite hints on coin-flip costs: neither helps, regret scales with ||u||
sc = generate(ScenarioSpec(kind="random-signs", T=2048, d=2, K=2, seed=4))
lr = UnconstrainedHints(2, 2)
play(lr, sc.costs, sc.hints)
g = lr.ledger.cost_sum
u = -g / np.linalg.norm(g) if np.linalg.norm(g) > 0 else np.array([1.0, 0.0])
for R in (1, 10, 100, 1000):
    print(f"||u|| = {R:5d}: regret {lr.ledger.regret_vs(R * u):10.2f}  regret/||u|| {lr.ledger.regret_vs(R * u) / R:7.3f}")
