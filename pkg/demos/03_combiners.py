"""Combining base learners without knowing which one suits the data.

Adagrad wins on sparse costs in a box, OGD on dense costs in a ball.  On the
unit ball the per-coordinate bound is never smaller than the Euclidean one,
so here the combiner mostly has to avoid being fooled.  Both combiners stay
far inside their K (4 + 4 min bound) guarantee.
"""

import numpy as np

from olohints import AdaptiveOGD, DeterministicCombiner, DiagonalAdagrad, RandomizedCombiner, make_rng, play
from olohints.combiners import combiner_guarantee

T, d = 4096, 32
rng = make_rng(5)
streams = {
    "sparse": np.eye(d)[rng.integers(0, d, T)] * rng.choice([-1.0, 1.0], (T, 1)),
    "dense": rng.standard_normal((T, d)),
}
streams["dense"] /= np.linalg.norm(streams["dense"], axis=1, keepdims=True)

for name, costs in streams.items():
    print(f"-- {name} costs")
    for label, lr in (("ogd", AdaptiveOGD(d)), ("adagrad", DiagonalAdagrad(d))):
        play(lr, costs)
        print(f"  {label:14s} regret {lr.ledger.worst_case_regret():8.2f}  bound {lr.monotone_bound(costs):8.2f}")
    for label, comb in (("deterministic", DeterministicCombiner([AdaptiveOGD(d), DiagonalAdagrad(d)])),
                        ("randomized", RandomizedCombiner([AdaptiveOGD(d), DiagonalAdagrad(d)], seed=1))):
        play(comb, costs)
        m = min(lr.monotone_bound(0.5 * costs) for lr in comb.learners)
        cap = 2 * combiner_guarantee(comb.K, m)
        print(f"  {label:14s} regret {comb.ledger.worst_case_regret():8.2f}  guarantee {cap:8.1f}  "
              f"phases {comb.phase_count}, switches {len(comb.switch_rounds)}")
