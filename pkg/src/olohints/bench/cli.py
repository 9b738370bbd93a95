"""Command line entry point: ``run``, ``propcheck``, ``lowerbound`` and ``list``."""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from ..adversaries import SCENARIO_KINDS, gen_alpha_lower, gen_logK_lower
from ..combiners import (
    AdaptiveOGD,
    DeterministicCombiner,
    DiagonalAdagrad,
    RandomizedCombiner,
    khints_factory,
    unknown_alpha_learner,
)
from ..core import play
from ..multi_hint import KHints, MWUHints
from ..single_hint import OneHint
from . import propcheck
from .bounds import BOUND_IDS
from .runner import LEARNER_TYPES, ConfigError, load_config, rows_to_csv, run_experiment, summarize, write_outputs

EXIT_OK, EXIT_CONFIG, EXIT_CHECK = 0, 2, 3


def _cmd_run(args) -> int:
    try:
        cfg = load_config(args.config)
        if args.trials is not None:
            cfg.trials = args.trials
        rows = run_experiment(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    out = args.out or cfg.output_path
    if out:
        write_outputs(cfg, rows, out)
    else:
        sys.stdout.write(rows_to_csv(rows))
    if args.summary:
        for name, s in summarize(rows, seed=cfg.seed).items():
            print(f"{name}: n={s['n']} mean={s['mean']:.4g} median={s['median']:.4g} "
                  f"95% CI=[{s['ci_low']:.4g}, {s['ci_high']:.4g}]", file=sys.stderr)
    return EXIT_OK


def _cmd_propcheck(args) -> int:
    failed = 0
    for name, ok, detail in propcheck.run_all(args.seed):
        print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        failed += not ok
    return EXIT_CHECK if failed else EXIT_OK


def _lower_logk(args) -> int:
    sc = gen_logK_lower(args.T, args.alpha, args.seed)
    corr = np.einsum("td,td->t", sc.costs, np.einsum("tkd,k->td", sc.hints, sc.witness))
    K = sc.K
    floor = math.sqrt(math.log(K) / (2 * args.alpha))
    lr = KHints(args.alpha, max(args.T, 2), 1, K)
    play(lr, sc.costs, sc.hints)
    print(f"T={args.T} alpha={args.alpha} B={sc.info['B']} K={K}")
    print(f"witness correlation: min={corr.min():.17g} max={corr.max():.17g}")
    print(f"k-hints regret={lr.ledger.worst_case_regret():.4f}  floor sqrt(log K / 2 alpha)={floor:.4f}")
    return EXIT_OK


def _lower_alpha(args) -> int:
    T, a, d = args.T, args.alpha, 2
    makers = {
        "one-hint": lambda s: OneHint(a, T, d),
        "k-hints": lambda s: KHints(a, T, d, 1),
        "mwu": lambda s: MWUHints(a, T, d, 1, seed=s),
        "adaptive-ogd": lambda s: AdaptiveOGD(d),
        "diagonal-adagrad": lambda s: DiagonalAdagrad(d),
        "combiner-det": lambda s: DeterministicCombiner([AdaptiveOGD(d), DiagonalAdagrad(d)]),
        "combiner-rand": lambda s: RandomizedCombiner([AdaptiveOGD(d), DiagonalAdagrad(d)], seed=s),
        "unknown-alpha": lambda s: unknown_alpha_learner(khints_factory(T, d, 1), T, seed=s),
    }
    print(f"T={T} alpha={a} seeds={args.seeds} floor 0.5/alpha={0.5 / a:.3f}")
    for name, mk in makers.items():
        regrets = []
        for s in range(args.seeds):
            sc = gen_alpha_lower(T, a, args.seed + s)
            lr = mk(args.seed + s)
            play(lr, sc.costs, sc.hints)
            regrets.append(lr.ledger.worst_case_regret())
        print(f"{name:18s} mean regret={np.mean(regrets):9.3f}")
    return EXIT_OK


def _cmd_lowerbound(args) -> int:
    try:
        if args.kind == "logk":
            return _lower_logk(args)
        return _lower_alpha(args)
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def _cmd_list(args) -> int:
    print("learners:  " + ", ".join(LEARNER_TYPES))
    print("scenarios: " + ", ".join(SCENARIO_KINDS))
    print("bounds:    " + ", ".join(BOUND_IDS))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="olohints", description="Regret experiments for hint-based online learning.")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run an experiment config")
    run.add_argument("config")
    run.add_argument("--out", help="CSV path (overrides [output] path; stdout if neither)")
    run.add_argument("--trials", type=int, help="override the number of trials")
    run.add_argument("--summary", action="store_true", help="print mean/median/CI to stderr")
    run.set_defaults(func=_cmd_run)

    pc = sub.add_parser("propcheck", help="run the property suites")
    pc.add_argument("--seed", type=int, default=0)
    pc.set_defaults(func=_cmd_propcheck)

    lb = sub.add_parser("lowerbound", help="run a lower-bound construction")
    lb.add_argument("kind", choices=("logk", "alpha"))
    lb.add_argument("--T", type=int, default=None)
    lb.add_argument("--alpha", type=float, default=None)
    lb.add_argument("--seeds", type=int, default=20)
    lb.add_argument("--seed", type=int, default=0)
    lb.set_defaults(func=_cmd_lowerbound)

    ls = sub.add_parser("list", help="list learners, scenarios and bounds")
    ls.set_defaults(func=_cmd_list)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "kind", None) == "logk":
        args.T = args.T or 32
        args.alpha = args.alpha or 0.125
    elif getattr(args, "kind", None) == "alpha":
        args.T = args.T or 4096
        args.alpha = args.alpha or 0.1
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
