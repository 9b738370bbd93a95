"""The two constructions that show the guarantees cannot be improved much.

1. Many hint sequences enumerate every sign pattern on short blocks.  Some
   mixture of them is alpha-correlated with the costs on every round, yet
   the costs are random signs, so no learner can exploit it cheaply.
2. One fixed hint e_0 is exactly alpha-correlated with costs whose other
   coordinate is a coin flip; every learner pays about 1/alpha.
"""

import numpy as np

from olohints import AdaptiveOGD, KHints, OneHint, gen_alpha_lower, gen_logK_lower, play

sc = gen_logK_lower(16, 0.125, seed=0)
corr = np.einsum("td,td->t", sc.costs, np.einsum("tkd,k->td", sc.hints, sc.witness))
lr = KHints(0.125, 16, 1, sc.K)
play(lr, sc.costs, sc.hints)
print(f"{sc.K} hint sequences, witness correlation per round {set(corr.tolist())}, "
      f"regret {lr.ledger.worst_case_regret():.2f}")

T, alpha = 4096, 0.1
for name, make in (("one-hint", lambda: OneHint(alpha, T, 2)), ("adaptive-ogd", lambda: AdaptiveOGD(2))):
    regs = []
    for s in range(20):
        sc = gen_alpha_lower(T, alpha, seed=s)
        learner = make()
        play(learner, sc.costs, sc.hints)
        regs.append(learner.ledger.worst_case_regret())
    print(f"{name:13s} mean regret {np.mean(regs):6.2f}   (1/alpha = {1 / alpha:.0f})")
