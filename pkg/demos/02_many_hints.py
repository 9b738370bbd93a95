"""Blending hints beats picking one.

Each of the two hint sequences is wrong on alternate rounds, so any method
that follows a single sequence at a time keeps stepping on bad hints.  The
equal-weight blend is never bad.  The simplex learner finds it; the
multiplicative-weights learner keeps sampling.
"""

import numpy as np

from olohints import KHints, MWUHints, gen_complementary_pair, play
from olohints.multi_hint import bad_step_set, blend

T, alpha = 4096, 0.25
sc = gen_complementary_pair(T, 3, seed=3)
for k in range(2):
    print(f"sequence {k}: {bad_step_set(sc.hints[:, k], sc.costs, alpha).size} bad rounds of {T}")
print(f"half-half blend: {bad_step_set(blend(sc.hints, [0.5, 0.5]), sc.costs, alpha).size} bad rounds")

kh = KHints(alpha, T, 3, 2)
play(kh, sc.costs, sc.hints)
mw = MWUHints(alpha, T, 3, 2, seed=3)
play(mw, sc.costs, sc.hints)
print(f"simplex learner: regret {kh.ledger.worst_case_regret():9.2f}, final weights {np.round(kh.w, 3)}")
print(f"sampling learner: regret {mw.ledger.worst_case_regret():9.2f}, final weights {np.round(mw.weights, 3)}")
