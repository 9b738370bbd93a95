"""A single hint sequence turns sqrt(T) regret into logarithmic regret.

We feed unit costs with a bias along e_0 to three learners: plain adaptive
OGD, the one-hint learner with informative hints, and the same learner when
a quarter of the hints point the wrong way.
"""

import math

from olohints import AdaptiveOGD, OneHint, ScenarioSpec, gen_correlated, play

alpha = 0.25
print(f"{'T':>6} {'ogd':>8} {'hints':>8} {'25% bad':>8} {'sqrt T':>8} {'log T':>7}")
for T in (256, 1024, 4096, 16384):
    good = gen_correlated(ScenarioSpec(T=T, d=4, alpha=alpha, seed=1, drift=0.5))
    bad = gen_correlated(ScenarioSpec(T=T, d=4, alpha=alpha, seed=1, drift=0.5, bad_fraction=0.25))

    ogd = AdaptiveOGD(4)
    play(ogd, good.costs)
    clean = OneHint(alpha, T, 4)
    play(clean, good.costs, good.hints[:, 0])
    noisy = OneHint(alpha, T, 4)
    play(noisy, bad.costs, bad.hints[:, 0])

    print(f"{T:6d} {ogd.ledger.worst_case_regret():8.2f} {clean.ledger.worst_case_regret():8.2f} "
          f"{noisy.ledger.worst_case_regret():8.2f} {math.sqrt(T):8.1f} {math.log(T):7.2f}")

# The hinted column grows roughly like log T.  Bad hints cost extra, but the
# radius only inflates on rounds where the hint points against the cost.
