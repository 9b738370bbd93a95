"""Seeded cost/hint sequence generators.

Every generator returns plain arrays: costs with shape ``(T, d)`` and hints
with shape ``(T, K, d)``.  All randomness comes from ``core.make_rng`` so a
given seed reproduces a sequence bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import check_hint_matrix, check_unit, make_rng

SCENARIO_KINDS = ("correlated", "logk-lower", "alpha-lower", "complementary-pair", "random-signs")


@dataclass
class ScenarioSpec:
    """Parameters of one generated sequence.

    ``bad_set`` (zero-based rounds) takes precedence over ``bad_fraction``.
    ``drift`` in ``[0, 1)`` biases correlated costs toward ``e_0``.
    """

    kind: str = "correlated"
    T: int = 1024
    d: int = 4
    K: int = 1
    alpha: float = 0.25
    bad_fraction: float = 0.0
    bad_set: tuple | None = None
    seed: int = 0
    drift: float = 0.0

    def __post_init__(self):
        if self.kind not in SCENARIO_KINDS:
            raise ValueError(f"unknown scenario kind {self.kind!r}; valid: {', '.join(SCENARIO_KINDS)}")
        if self.T < 1 or self.d < 1 or self.K < 1:
            raise ValueError("T, d and K must be positive")
        if not 0.0 <= self.bad_fraction <= 1.0:
            raise ValueError("bad_fraction must lie in [0, 1]")
        if not 0.0 <= self.drift < 1.0:
            raise ValueError("drift must lie in [0, 1)")


@dataclass
class Scenario:
    costs: np.ndarray
    hints: np.ndarray
    spec: ScenarioSpec | None = None
    witness: np.ndarray | None = None
    info: dict = field(default_factory=dict)

    @property
    def T(self) -> int:
        return self.costs.shape[0]

    @property
    def K(self) -> int:
        return self.hints.shape[1]


def _unit_rows(z: np.ndarray) -> np.ndarray:
    return z / np.linalg.norm(z, axis=-1, keepdims=True)


def _orthogonal_unit(rng, c: np.ndarray) -> np.ndarray:
    """Rows ``n_t`` with ``||n_t|| = 1`` and ``<n_t, c_t> = 0`` (Gram-Schmidt on Gaussians)."""
    T, d = c.shape
    while True:
        g = rng.standard_normal((T, d))
        for _ in range(2):  # second pass removes the rounding left by the first
            g -= np.einsum("td,td->t", g, c)[:, None] * c
        n = np.linalg.norm(g, axis=1)
        if np.all(n > 1e-8):
            return g / n[:, None]


def _meet_correlation(h: np.ndarray, c: np.ndarray, alpha: float) -> np.ndarray:
    """Nudge rows along ``c`` until ``<h, c> >= alpha ||c||^2`` holds in floating point."""
    h = h.copy()
    for _ in range(60):
        deficit = alpha * np.einsum("td,td->t", c, c) - np.einsum("td,td->t", h, c)
        short = deficit >= 0.0
        if not np.any(short):
            break
        step = np.maximum(deficit[short], 1e-16) * 2.0
        h[short] += step[:, None] * c[short]
    else:
        raise RuntimeError("could not reach the target correlation")
    return h


def _bad_rounds(rng, spec: ScenarioSpec) -> np.ndarray:
    mask = np.zeros(spec.T, dtype=bool)
    if spec.bad_set is not None:
        idx = np.asarray(list(spec.bad_set), dtype=int)
        if idx.size and (idx.min() < 0 or idx.max() >= spec.T):
            raise ValueError("bad_set must be a subset of range(T)")
        mask[idx] = True
    elif spec.bad_fraction > 0:
        n = int(round(spec.bad_fraction * spec.T))
        mask[rng.choice(spec.T, size=n, replace=False)] = True
    return mask


def gen_correlated(spec: ScenarioSpec) -> Scenario:
    """Unit costs with hints exactly ``alpha``-correlated off the bad rounds.

    Good rounds get ``h = alpha c + sqrt(1 - alpha^2) n`` with ``n`` a unit
    vector orthogonal to ``c``; bad rounds get ``h = -c``.  In ``d = 1`` the
    orthogonal part vanishes and ``h = alpha c``.  With ``K > 1`` every
    sequence shares the bad rounds but draws its own orthogonal noise.
    """
    if not 0.0 < spec.alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {spec.alpha}")
    T, d, K, a = spec.T, spec.d, spec.K, spec.alpha
    rng = make_rng(spec.seed, 0)
    z = _unit_rows(rng.standard_normal((T, d)))
    if spec.drift > 0:
        z = (1.0 - spec.drift) * z
        z[:, 0] += spec.drift
        z = _unit_rows(z)
    costs = z
    bad = _bad_rounds(rng, spec)
    hints = np.empty((T, K, d))
    for k in range(K):
        if d == 1:
            h = a * costs
        else:
            h = _meet_correlation(a * costs + math.sqrt(1.0 - a * a) * _orthogonal_unit(rng, costs), costs, a)
        h[bad] = -costs[bad]
        hints[:, k] = h
    return Scenario(costs, hints, spec, info={"bad_rounds": np.flatnonzero(bad)})


def gen_logK_lower(T: int, alpha: float, seed: int = 0) -> Scenario:
    """Random-sign scalar costs against every sign pattern on blocks of ``B = alpha T`` rounds.

    Sequences are grouped by block; each group enumerates the ``2^B`` sign
    patterns on its block and is zero elsewhere, so ``K = T 2^B / B``.  The
    returned witness puts weight ``B / T`` on the pattern that matches the
    costs in each block; its blend has correlation ``B / T`` every round.
    """
    Bf = alpha * T
    B = int(round(Bf))
    if B < 1 or abs(Bf - B) > 1e-9 or T % B:
        raise ValueError(f"alpha * T = {Bf:g} must be a positive integer dividing T = {T}")
    if B > 16:
        raise ValueError("block length above 16 would need too many hint sequences")
    groups = T // B
    P = 2 ** B
    K = groups * P
    rng = make_rng(seed, 0)
    s = rng.choice([-1.0, 1.0], size=T)
    costs = s[:, None].copy()
    # patterns[p, j] = sign of bit j of p
    patterns = 1.0 - 2.0 * ((np.arange(P)[:, None] >> np.arange(B)[None, :]) & 1)
    hints = np.zeros((T, K, 1))
    witness = np.zeros(K)
    for g in range(groups):
        rows = slice(g * B, (g + 1) * B)
        hints[rows, g * P:(g + 1) * P, 0] = patterns.T
        match = int(np.flatnonzero(np.all(patterns == s[rows], axis=1))[0])
        witness[g * P + match] = B / T
    corr = np.einsum("td,td->t", costs, np.einsum("tkd,k->td", hints, witness))
    if not np.all(corr == B / T):
        raise AssertionError("witness blend is not exactly alpha-correlated")
    info = {"B": B, "groups": groups, "alpha_effective": B / T}
    return Scenario(costs, hints, ScenarioSpec("logk-lower", T, 1, K, alpha, seed=seed), witness, info)


def gen_alpha_lower(T: int, alpha: float, seed: int = 0) -> Scenario:
    """Two-dimensional costs ``alpha e_0 +- sqrt(1 - alpha^2) e_1`` with the fixed hint ``e_0``."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    rng = make_rng(seed, 0)
    s = rng.choice([-1.0, 1.0], size=T)
    costs = np.empty((T, 2))
    costs[:, 0] = alpha
    costs[:, 1] = s * math.sqrt(1.0 - alpha * alpha)
    hints = np.zeros((T, 1, 2))
    hints[:, 0, 0] = 1.0
    return Scenario(costs, hints, ScenarioSpec("alpha-lower", T, 2, 1, alpha, seed=seed))


def gen_complementary_pair(T: int, d: int = 3, seed: int = 0, drift: float = 0.0) -> Scenario:
    """Two hint sequences that are each bad half the time while their average never is.

    Costs are ``+-e_0``; a positive ``drift`` adds a constant ``e_1``
    component before normalizing.  On its good rounds a sequence equals the cost; on its bad
    rounds it is ``-c/4`` plus an orthogonal part along its own noise axis,
    so ``<c, h>`` alternates between ``1`` and ``-1/4``.  Sequence 1 is bad on
    even (zero-based) rounds, sequence 2 on odd rounds; the average has
    correlation ``3/8`` every round.
    """
    if T % 2:
        raise ValueError("T must be even")
    if d < 3:
        raise ValueError("need d >= 3 for two orthogonal noise axes")
    if not 0.0 <= drift < 1.0:
        raise ValueError("drift must lie in [0, 1)")
    if drift > 0 and d < 4:
        raise ValueError("drifted costs use two coordinates, so d >= 4 is needed")
    rng = make_rng(seed, 0)
    s = rng.choice([-1.0, 1.0], size=T)
    costs = np.zeros((T, d))
    costs[:, 0] = s
    if drift > 0:
        # constant component along e_1 gives the comparator something to win
        costs[:, 0] = (1.0 - drift) * s
        costs[:, 1] = drift
        costs = _unit_rows(costs)
    # noise axes orthogonal to every cost
    noise = np.zeros((2, d))
    noise[0, d - 2] = 1.0
    noise[1, d - 1] = 1.0
    q = math.sqrt(1.0 - 1.0 / 16.0)
    hints = np.empty((T, 2, d))
    even = (np.arange(T) % 2 == 0)
    for k in range(2):
        bad = even if k == 0 else ~even
        hints[:, k] = costs
        hints[bad, k] = -0.25 * costs[bad] + q * noise[k]
    info = {"bad_rounds": [np.flatnonzero(even), np.flatnonzero(~even)]}
    return Scenario(costs, hints, ScenarioSpec("complementary-pair", T, d, 2, 0.25, seed=seed, drift=drift),
                    np.array([0.5, 0.5]), info)


def gen_random_signs(T: int, d: int = 1, seed: int = 0) -> np.ndarray:
    """Costs ``+-e_0`` with i.i.d. fair signs."""
    rng = make_rng(seed, 0)
    costs = np.zeros((T, d))
    costs[:, 0] = rng.choice([-1.0, 1.0], size=T)
    return costs


def generate(spec: ScenarioSpec) -> Scenario:
    """Dispatch on ``spec.kind``."""
    if spec.kind == "correlated":
        return gen_correlated(spec)
    if spec.kind == "logk-lower":
        return gen_logK_lower(spec.T, spec.alpha, spec.seed)
    if spec.kind == "alpha-lower":
        return gen_alpha_lower(spec.T, spec.alpha, spec.seed)
    if spec.kind == "complementary-pair":
        return gen_complementary_pair(spec.T, spec.d, spec.seed, spec.drift)
    costs = gen_random_signs(spec.T, spec.d, spec.seed)
    # fixed opposite hints +-e_0: each is right exactly when the coin says so
    hints = np.zeros((spec.T, max(spec.K, 1), spec.d))
    hints[:, 0, 0] = 1.0
    if spec.K >= 2:
        hints[:, 1, 0] = -1.0
    return Scenario(costs, hints, spec)


def validate(costs, hints) -> None:
    """Raise unless every cost and hint passes the core norm checks."""
    for t, c in enumerate(np.asarray(costs, dtype=float)):
        check_unit(c, f"cost at round {t}")
    for H in np.asarray(hints, dtype=float):
        check_hint_matrix(H)


def export_table(path, costs, hints) -> None:
    """Write ``t, c_0..c_{d-1}, h{k}_{j}...`` as CSV with round-trip precision."""
    costs = np.asarray(costs, dtype=float)
    hints = np.asarray(hints, dtype=float)
    T, d = costs.shape
    K = hints.shape[1]
    header = ["t"] + [f"c{j}" for j in range(d)] + [f"h{k}_{j}" for k in range(K) for j in range(d)]
    table = np.column_stack([np.arange(T), costs, hints.reshape(T, K * d)])
    fmt = ["%d"] + ["%.17g"] * (table.shape[1] - 1)
    np.savetxt(path, table, fmt=fmt, delimiter=",", header=",".join(header), comments="")


def import_table(path) -> tuple[np.ndarray, np.ndarray]:
    """Inverse of ``export_table``; returns ``(costs, hints)``."""
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
    d = sum(1 for h in header if h.startswith("c"))
    K = (len(header) - 1 - d) // d
    table = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    costs = table[:, 1:1 + d]
    hints = table[:, 1 + d:].reshape(-1, K, d)
    return costs, hints


__all__ = [
    "SCENARIO_KINDS",
    "Scenario",
    "ScenarioSpec",
    "export_table",
    "gen_alpha_lower",
    "gen_complementary_pair",
    "gen_correlated",
    "gen_logK_lower",
    "gen_random_signs",
    "generate",
    "import_table",
    "validate",
]
