"""Experiment configuration, learner registry and the trial runner."""

from __future__ import annotations

import configparser
import csv
import hashlib
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .. import __version__
from ..adversaries import SCENARIO_KINDS, ScenarioSpec, generate
from ..combiners import (
    DeterministicCombiner,
    RandomizedCombiner,
    ZOO_KINDS,
    base_learner_zoo,
    khints_factory,
    pnorm_grid,
    unknown_alpha_learner,
)
from ..core import PRNG_NAME, Learner, make_rng
from ..multi_hint import KHints, MWUHints
from ..single_hint import OneHint
from ..unconstrained import UnconstrainedHints
from . import bounds

RESULT_COLUMNS = ("trial", "t", "learner", "regret", "bound", "ratio")


class ConfigError(ValueError):
    """Invalid experiment configuration."""


@dataclass
class LearnerConfig:
    name: str
    type: str
    params: dict = field(default_factory=dict)


@dataclass
class ExperimentConfig:
    scenario: ScenarioSpec
    learners: list
    trials: int = 1
    seed: int = 0
    workers: int = 1
    output_path: str | None = None
    metadata: bool = True
    source_text: str = ""

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        names = [lc.name for lc in self.learners]
        if len(set(names)) != len(names):
            raise ConfigError("learner names must be unique")
        if not names:
            raise ConfigError("at least one [learner.NAME] section is required")

    @property
    def sha256(self) -> str:
        return hashlib.sha256(self.source_text.encode("utf-8")).hexdigest()


@dataclass
class ResultRow:
    trial: int
    t: int
    learner: str
    regret: float
    bound: float
    ratio: float

    def as_tuple(self):
        return (self.trial, self.t, self.learner, self.regret, self.bound, self.ratio)


# -- learner registry ---------------------------------------------------------

class HintColumn(Learner):
    """Feeds one column of the hint matrix to a single-hint learner."""

    def __init__(self, inner: Learner, index: int = 0):
        super().__init__(inner.dim)
        self.inner = inner
        self.index = int(index)
        self.constrained = inner.constrained

    def _reset(self):
        self.inner.reset()

    def _predict(self, hints):
        h = None if hints is None else hints[self.index]
        return self.inner.observe_hints(h, validate=False)

    def _update(self, c):
        self.inner.observe_cost(c, validate=False)


def _float(params, key, default=None):
    if key not in params:
        if default is None:
            raise ConfigError(f"missing parameter {key!r}")
        return default
    try:
        return float(params[key])
    except ValueError:
        raise ConfigError(f"parameter {key!r} must be a number, got {params[key]!r}") from None


def _zoo_members(params, dim):
    kinds = [k.strip() for k in params.get("members", "adaptive-ogd,diagonal-adagrad").split(",") if k.strip()]
    for k in kinds:
        if k not in ZOO_KINDS:
            raise ConfigError(f"unknown combiner member {k!r}; valid: {', '.join(ZOO_KINDS)}")
    return [base_learner_zoo(k, dim) for k in kinds]


def _build(lc: LearnerConfig, T: int, dim: int, K: int, seed) -> Learner:
    p = lc.params
    kind = lc.type
    if kind == "one-hint":
        return HintColumn(OneHint(_float(p, "alpha"), max(T, 2), dim), int(p.get("hint", 0)))
    if kind == "k-hints":
        return KHints(_float(p, "alpha"), max(T, 2), dim, K)
    if kind == "mwu":
        return MWUHints(_float(p, "alpha"), max(T, 2), dim, K, seed=seed,
                        eta=_float(p, "eta", 0.5), loss_rule=p.get("loss_rule", "signed"))
    if kind == "unknown-alpha":
        return unknown_alpha_learner(khints_factory(max(T, 2), dim, K), max(T, 2), seed=seed)
    if kind in ("adaptive-ogd", "diagonal-adagrad"):
        return base_learner_zoo(kind, dim)
    if kind == "p-norm":
        if "p" in p:
            return base_learner_zoo("p-norm-mirror-descent", dim, p=_float(p, "p"))
        if not pnorm_grid(dim):
            raise ConfigError(f"p-norm grid is empty for d = {dim}; give p explicitly")
        return base_learner_zoo("p-norm-mirror-descent", dim)
    if kind == "combiner-det":
        return DeterministicCombiner(_zoo_members(p, dim))
    if kind == "combiner-rand":
        return RandomizedCombiner(_zoo_members(p, dim), seed=seed,
                                  reset_policy=p.get("reset_policy", "candidates"))
    if kind == "unconstrained":
        return UnconstrainedHints(dim, K, epsilon=_float(p, "epsilon", 1.0))
    raise ConfigError(f"unknown learner type {kind!r}; valid: {', '.join(LEARNER_TYPES)}")


LEARNER_TYPES = ("one-hint", "k-hints", "mwu", "unknown-alpha", "adaptive-ogd", "diagonal-adagrad",
                 "p-norm", "combiner-det", "combiner-rand", "unconstrained")


def _combiner_bound(learner, costs, randomized: bool) -> float:
    # caller units: twice the half-scale guarantee, members' bounds on halved costs
    m = min(lr.monotone_bound(0.5 * costs) for lr in learner.learners)
    K = learner.K
    half = bounds.combiner_rand_bound(K, m) if randomized else bounds.combiner_det_bound(K, m)
    return 2.0 * half


def learner_bound(lc: LearnerConfig, learner: Learner, costs, hints, T: int) -> float:
    """Analytic bound matching ``lc`` on the prefix ``costs``; NaN when none applies."""
    kind = lc.type
    p = lc.params
    horizon = max(T, 2)
    if kind == "one-hint":
        col = hints[:, int(p.get("hint", 0))]
        return bounds.evaluate_bound("one-hint", costs, col, alpha=float(p["alpha"]), horizon=horizon)
    if kind == "k-hints":
        return bounds.evaluate_bound("k-hints", costs, hints, alpha=float(p["alpha"]), horizon=horizon)
    if kind == "mwu":
        return bounds.evaluate_bound("mwu", costs, hints, alpha=float(p["alpha"]), horizon=horizon)
    if kind == "unknown-alpha":
        return bounds.evaluate_bound("unknown-alpha", costs, hints, horizon=horizon)
    if kind in ("adaptive-ogd", "diagonal-adagrad") or (kind == "p-norm" and hasattr(learner, "monotone_bound")):
        return learner.monotone_bound(costs)
    if kind in ("combiner-det", "combiner-rand") or kind == "p-norm":
        return _combiner_bound(learner, costs, randomized=kind == "combiner-rand")
    if kind == "unconstrained":
        return bounds.evaluate_bound("unconstrained", costs, hints, alpha=float(p.get("alpha", 0.25)),
                                     horizon=horizon)
    return math.nan


# -- config parsing -------------------------------------------------------------

def _scenario_from(section) -> ScenarioSpec:
    try:
        bad_set = section.get("bad_set")
        return ScenarioSpec(
            kind=section.get("kind", "correlated"),
            T=section.getint("T", 1024),
            d=section.getint("d", 4),
            K=section.getint("K", 1),
            alpha=section.getfloat("alpha", 0.25),
            bad_fraction=section.getfloat("bad_fraction", 0.0),
            bad_set=None if not bad_set else tuple(int(x) for x in bad_set.split(",") if x.strip()),
            seed=section.getint("seed", 0),
            drift=section.getfloat("drift", 0.0),
        )
    except ValueError as exc:
        raise ConfigError(f"[scenario]: {exc}") from None


def parse_config(text: str) -> ExperimentConfig:
    """Parse the INI-style experiment description."""
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    if "scenario" not in cp:
        raise ConfigError("missing [scenario] section")
    scenario = _scenario_from(cp["scenario"])
    exp = cp["experiment"] if "experiment" in cp else {}
    learners = []
    for sec in cp.sections():
        if sec.startswith("learner."):
            params = dict(cp[sec])
            kind = params.pop("type", None)
            if kind is None:
                raise ConfigError(f"[{sec}] needs a 'type'")
            if kind not in LEARNER_TYPES:
                raise ConfigError(f"[{sec}]: unknown learner type {kind!r}; valid: {', '.join(LEARNER_TYPES)}")
            learners.append(LearnerConfig(sec[len("learner."):], kind, params))
        elif sec not in ("scenario", "experiment", "output"):
            raise ConfigError(f"unknown section [{sec}]")
    out = cp["output"] if "output" in cp else {}
    try:
        return ExperimentConfig(
            scenario=scenario,
            learners=learners,
            trials=int(exp.get("trials", 1)),
            seed=int(exp.get("seed", 0)),
            workers=int(exp.get("workers", 1)),
            output_path=out.get("path"),
            metadata=str(out.get("metadata", "true")).lower() in ("1", "true", "yes", "on"),
            source_text=text,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def load_config(path) -> ExperimentConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_config(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None


# -- running ----------------------------------------------------------------------

def checkpoints(T: int) -> list[int]:
    """Powers of two up to ``T``, plus ``T`` itself."""
    pts = []
    p = 1
    while p <= T:
        pts.append(p)
        p *= 2
    if not pts or pts[-1] != T:
        pts.append(T)
    return pts


def trial_seed(base: int, trial: int) -> int:
    return int(np.random.SeedSequence(base, spawn_key=(trial,)).generate_state(1, np.uint64)[0])


def learner_seed(base: int, trial: int, j: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(base, spawn_key=(trial, 1 + j))


def _run_trial(args):
    cfg, trial, keep_trace = args
    spec = ScenarioSpec(**{**cfg.scenario.__dict__, "seed": trial_seed(cfg.seed, trial)})
    sc = generate(spec)
    costs, hints = sc.costs, sc.hints
    T, dim = costs.shape
    K = hints.shape[1]
    cps = checkpoints(T)
    rows = []
    traces = {}
    for j, lc in enumerate(cfg.learners):
        learner = _build(lc, T, dim, K, learner_seed(cfg.seed, trial, j))
        xs = np.empty_like(costs)
        k = 0
        for t in range(T):
            xs[t] = learner.observe_hints(hints[t])
            learner.observe_cost(costs[t])
            if t + 1 == cps[k]:
                regret = learner.ledger.worst_case_regret()
                bound = learner_bound(lc, learner, costs[:t + 1], hints[:t + 1], T)
                ratio = regret / bound if bound > 0 else math.nan
                rows.append(ResultRow(trial, t + 1, lc.name, regret, bound, ratio))
                k += 1
        if keep_trace:
            traces[lc.name] = xs
    return rows, (costs, hints, traces) if keep_trace else None


def run_experiment(cfg: ExperimentConfig, keep_trace: bool = False):
    """Run every trial; rows come back sorted by (trial, learner order, t).

    With ``keep_trace`` the second return value maps trial to
    ``(costs, hints, {learner: decisions})``.
    """
    jobs = [(cfg, trial, keep_trace) for trial in range(cfg.trials)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_run_trial, jobs))
    else:
        results = [_run_trial(j) for j in jobs]
    rows = [r for res, _ in results for r in res]
    if keep_trace:
        return rows, {trial: tr for trial, (_, tr) in enumerate(results)}
    return rows


def _fmt(x) -> str:
    if isinstance(x, float):
        return "" if math.isnan(x) else repr(x)
    return str(x)


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(RESULT_COLUMNS)
    for r in rows:
        w.writerow([_fmt(v) for v in r.as_tuple()])
    return buf.getvalue()


def metadata(cfg: ExperimentConfig) -> dict:
    return {
        "config_sha256": cfg.sha256,
        "prng": PRNG_NAME,
        "version": __version__,
        "columns": list(RESULT_COLUMNS),
    }


def write_outputs(cfg: ExperimentConfig, rows, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(rows_to_csv(rows))
    if cfg.metadata:
        with open(path + ".json", "w", encoding="utf-8") as fh:
            json.dump(metadata(cfg), fh, indent=2, sort_keys=True)
            fh.write("\n")


def summarize(rows, seed: int = 0, n_resamples: int = 2000) -> dict:
    """Mean, median and 95% bootstrap interval of final regret per learner."""
    final_t = {}
    for r in rows:
        final_t[r.learner] = max(final_t.get(r.learner, 0), r.t)
    out = {}
    for j, name in enumerate(final_t):
        vals = np.array([r.regret for r in rows if r.learner == name and r.t == final_t[name]])
        mean = float(np.mean(vals))
        if vals.size > 1 and np.ptp(vals) > 0:
            res = stats.bootstrap((vals,), np.mean, n_resamples=n_resamples, method="percentile",
                                  rng=make_rng(seed, 2, j))
            lo, hi = float(res.confidence_interval.low), float(res.confidence_interval.high)
        else:
            lo = hi = mean
        out[name] = {"n": int(vals.size), "mean": mean, "median": float(np.median(vals)),
                     "ci_low": lo, "ci_high": hi}
    return out


__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "LEARNER_TYPES",
    "LearnerConfig",
    "RESULT_COLUMNS",
    "ResultRow",
    "SCENARIO_KINDS",
    "checkpoints",
    "learner_bound",
    "load_config",
    "parse_config",
    "rows_to_csv",
    "run_experiment",
    "summarize",
    "write_outputs",
]
