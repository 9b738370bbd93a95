"""Not knowing how good the hints are costs only a small factor.

The wrapper runs one simplex learner per alpha in {1/2, 1/4, ...} and lets the
randomized combiner discard the ones whose regret outgrows the current guess.
"""

from olohints import KHints, ScenarioSpec, gen_correlated, khints_factory, play, unknown_alpha_learner

T, d = 2048, 4
for alpha in (0.5, 0.125, 0.03125):
    sc = gen_correlated(ScenarioSpec(T=T, d=d, alpha=alpha, seed=2, drift=0.5))
    known = KHints(alpha, T, d, 1)
    play(known, sc.costs, sc.hints)
    wrapped = unknown_alpha_learner(khints_factory(T, d, 1), T, seed=2)
    play(wrapped, sc.costs, sc.hints)
    print(f"alpha={alpha:<8} known {known.ledger.worst_case_regret():7.2f}   "
          f"unknown {wrapped.ledger.worst_case_regret():7.2f}   "
          f"followed alpha {wrapped.learners[wrapped.i].alpha:<10} phases {wrapped.phase_count}")
