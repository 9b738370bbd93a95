"""Quick property checks over every module, runnable from the CLI.

Each check returns ``(ok, detail)``; ``run_all`` collects them by name.
"""

from __future__ import annotations

import math

import numpy as np

from ..adversaries import ScenarioSpec, gen_complementary_pair, gen_correlated, gen_logK_lower, validate
from ..combiners import AdaptiveOGD, DeterministicCombiner, DiagonalAdagrad, RandomizedCombiner, aogd_bound
from ..core import RegretLedger, make_rng, play, project_to_ball
from ..multi_hint import FtrlState, KHints, ftrl_simplex_update, simplex_loss, smoothed_hinge
from ..single_hint import OneHint, solve_damping
from ..unconstrained import KTBettor, UnconstrainedHints


def _unit_ball(rng, n, d):
    z = rng.standard_normal((n, d))
    return z / np.linalg.norm(z, axis=1, keepdims=True) * rng.uniform(0, 1, (n, 1)) ** (1 / d)


def check_ledger(rng, n=200):
    d = 3
    xs, cs = _unit_ball(rng, 6, d), _unit_ball(rng, 6, d)
    led = RegretLedger(d).extend(xs, cs)
    us = _unit_ball(rng, n, d)
    worst = led.worst_case_regret()
    gap = max(led.regret_vs(u) for u in us) - worst
    return gap <= 1e-12, f"max sampled regret - worst case = {gap:.3g}"


def check_projection(rng, n=500):
    x = rng.normal(0, 2, (n, 4))
    y = rng.normal(0, 2, (n, 4))
    px = np.array([project_to_ball(v) for v in x])
    py = np.array([project_to_ball(v) for v in y])
    expand = np.max(np.linalg.norm(px - py, axis=1) - np.linalg.norm(x - y, axis=1))
    idem = max(np.max(np.abs(project_to_ball(v) - v)) for v in px)
    return expand <= 1e-12 and idem == 0.0, f"expansion {expand:.3g}, idempotence error {idem:.3g}"


def check_hinge(rng, n=2000):
    a = rng.uniform(-2, 2, n)
    b = rng.uniform(0, 1, n)
    a2 = rng.uniform(-2, 2, n)
    f = smoothed_hinge(a, b)
    mid = smoothed_hinge((a + a2) / 2, b)
    conv = np.max(mid - (f + smoothed_hinge(a2, b)) / 2)
    return bool(np.all(f >= 0) and conv <= 1e-12), f"convexity violation {conv:.3g}"


def check_hinge_smoothness(rng, n=2000):
    worst = -math.inf
    for _ in range(n // 10):
        K, d = 3, 3
        H = _unit_ball(rng, K, d)
        c = _unit_ball(rng, 1, d)[0]
        w = rng.dirichlet(np.ones(K))
        alpha = rng.uniform(0.05, 0.95)
        v, g = simplex_loss(w, c, H, alpha)
        worst = max(worst, float(np.max(np.abs(g))) ** 2 - 4.0 / alpha * v)
    return worst <= 1e-9, f"max of ||g||_inf^2 - 4 l / alpha = {worst:.3g}"


def check_ftrl(rng, n=200):
    ok = True
    for _ in range(n):
        st = FtrlState(int(rng.integers(2, 6)))
        st.add(rng.normal(0, 50, st.K))
        w = ftrl_simplex_update(st)
        ok &= bool(np.all(w > 0) and abs(w.sum() - 1) <= 1e-12)
    return ok, "weights positive and normalized"


def check_damping(rng, n=2000):
    S = rng.uniform(0, 100, n) * rng.integers(0, 2, n)
    q = rng.uniform(0, 1, n)
    damp = np.array([solve_damping(s, qq) for s, qq in zip(S, q)])
    res = float(np.max(np.abs(damp * (S + damp) - q)))
    return res <= 1e-9, f"max residual {res:.3g}"


def check_feasibility(rng, T=500):
    sc = gen_correlated(ScenarioSpec(T=T, d=3, alpha=0.3, bad_fraction=0.3, seed=int(rng.integers(1 << 30))))
    xs = play(KHints(0.3, T, 3, 1), sc.costs, sc.hints)
    worst = float(np.max(np.linalg.norm(xs, axis=1)))
    ys = play(OneHint(0.3, T, 3), sc.costs, sc.hints)
    worst = max(worst, float(np.max(np.linalg.norm(ys, axis=1))))
    return worst <= 1 + 1e-9, f"largest decision norm {worst:.12g}"


def check_generators(rng):
    seed = int(rng.integers(1 << 30))
    a = gen_correlated(ScenarioSpec(T=64, d=3, K=2, alpha=0.4, bad_fraction=0.25, seed=seed))
    b = gen_correlated(ScenarioSpec(T=64, d=3, K=2, alpha=0.4, bad_fraction=0.25, seed=seed))
    validate(a.costs, a.hints)
    pair = gen_complementary_pair(16, 3, seed)
    validate(pair.costs, pair.hints)
    lk = gen_logK_lower(8, 0.25, seed)
    validate(lk.costs, lk.hints)
    same = np.array_equal(a.costs, b.costs) and np.array_equal(a.hints, b.hints)
    return same, "regeneration is bit-identical and passes norm validation"


def check_combiner(rng, T=512):
    cs = _unit_ball(rng, T, 4)
    det = DeterministicCombiner([AdaptiveOGD(4), DiagonalAdagrad(4)])
    play(det, cs)
    m = min(lr.monotone_bound(0.5 * cs) for lr in det.learners)
    half = det.ledger.worst_case_regret() / 2
    rand = RandomizedCombiner([AdaptiveOGD(4), DiagonalAdagrad(4)], seed=int(rng.integers(1 << 30)))
    play(rand, cs)
    half_r = rand.ledger.worst_case_regret() / 2
    cap = 2 * (4 + 4 * m)
    return half <= cap and half_r <= cap, f"half-scale regrets {half:.3g}, {half_r:.3g} vs {cap:.3g}"


def check_monotone_bound(rng, n=200):
    cs = _unit_ball(rng, 100, 3)
    ok = True
    for _ in range(n):
        a, b = sorted(rng.integers(0, 101, 2))
        a2 = int(rng.integers(a, b + 1))
        b2 = int(rng.integers(a2, b + 1))
        ok &= aogd_bound(cs[a2:b2]) <= aogd_bound(cs[a:b]) + 1e-12
    return ok, "nested intervals give nested bounds"


def check_unconstrained(rng, T=300):
    K, d = 2, 3
    cs = _unit_ball(rng, T, d)
    H = np.stack([_unit_ball(rng, T, d), _unit_ball(rng, T, d)], axis=1)
    lr = UnconstrainedHints(d, K)
    gap = 0.0
    for t in range(T):
        x = lr.observe_hints(H[t])
        gap = max(gap, float(np.max(np.abs(x - lr.x_base - lr.y @ H[t]))))
        lr.observe_cost(cs[t])
    wealth_ok = all(b.wealth >= 0 for b in lr.bettors) and lr.base.bettor.wealth >= 0
    kt = KTBettor(1.0)
    for g in rng.uniform(-1, 1, T):
        kt.predict()
        kt.update(float(g))
    return gap <= 1e-12 and wealth_ok and kt.wealth >= 0, f"composite identity error {gap:.3g}"


CHECKS = {
    "ledger-dominates-comparators": check_ledger,
    "projection-nonexpansive": check_projection,
    "hinge-convex-nonnegative": check_hinge,
    "hinge-self-bounded-gradient": check_hinge_smoothness,
    "ftrl-simplex": check_ftrl,
    "damping-fixed-point": check_damping,
    "decisions-in-ball": check_feasibility,
    "generators-deterministic": check_generators,
    "combiner-guarantee": check_combiner,
    "monotone-bound-nesting": check_monotone_bound,
    "unconstrained-composite": check_unconstrained,
}


def run_all(seed: int = 0) -> list[tuple[str, bool, str]]:
    out = []
    for i, (name, fn) in enumerate(CHECKS.items()):
        try:
            ok, detail = fn(make_rng(seed, i))
        except Exception as exc:  # a crash is a failed check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((name, bool(ok), detail))
    return out
