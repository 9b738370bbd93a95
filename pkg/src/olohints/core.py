"""Shared geometry, the hint/decision/cost protocol and regret accounting.

Decisions live in the Euclidean unit ball (constrained mode) or in R^d
(unconstrained mode).  Costs and hints are vectors of l2 norm at most one;
hint matrices are stored row-wise with shape ``(K, d)``.
"""

from __future__ import annotations

import math

import numpy as np

NORM_TOL = 1e-9


def _sqnorm(x: np.ndarray) -> float:
    return float(np.dot(x, x))


def project_to_ball(x) -> np.ndarray:
    """Euclidean projection onto the closed unit ball."""
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("cannot project a non-finite vector")
    n2 = _sqnorm(x)
    if n2 <= 1.0:
        return x
    y = x / math.sqrt(n2)
    # rounding can leave ||y|| a hair above one; shrink so that P(P(x)) == P(x)
    while _sqnorm(y) > 1.0:
        y = y * (1.0 - 2.0 ** -52)
    return y


def check_unit(v, name: str = "vector") -> np.ndarray:
    """Validate ``||v|| <= 1``; drift up to ``NORM_TOL`` is renormalized away."""
    v = np.asarray(v, dtype=float)
    n2 = _sqnorm(v)
    if not math.isfinite(n2):
        raise ValueError(f"{name} has non-finite entries")
    if n2 > 1.0:
        n = math.sqrt(n2)
        if n > 1.0 + NORM_TOL:
            raise ValueError(f"{name} has norm {n:.12g} > 1")
        v = v / n
    return v


def check_hint_matrix(H, dim: int | None = None) -> np.ndarray:
    """Coerce hints to a ``(K, d)`` array and validate each row norm."""
    H = np.asarray(H, dtype=float)
    if H.ndim == 1:
        H = H[None, :]
    if H.ndim != 2:
        raise ValueError(f"hint matrix must be (K, d), got shape {H.shape}")
    if dim is not None and H.shape[1] != dim:
        raise ValueError(f"hint dimension {H.shape[1]} != {dim}")
    norms = np.einsum("ij,ij->i", H, H)
    # NaN and inf both propagate into the max
    top = float(norms.max())
    if not math.isfinite(top):
        raise ValueError("hint matrix has non-finite entries")
    if top > 1.0:
        n = np.sqrt(norms)
        if np.any(n > 1.0 + NORM_TOL):
            raise ValueError(f"hint norm {n.max():.12g} > 1")
        H = H / np.maximum(n, 1.0)[:, None]
    return H


class RegretLedger:
    """Running totals ``sum <c_t, x_t>`` and ``sum c_t``.

    Worst-case regret against the unit ball has the closed form
    ``cumulative_cost + ||cost_sum||`` because
    ``sup_{||u||<=1} -<G, u> = ||G||``; updates are O(d).
    """

    __slots__ = ("cumulative_cost", "cost_sum", "rounds")

    def __init__(self, dim: int):
        self.cumulative_cost = 0.0
        self.cost_sum = np.zeros(dim)
        self.rounds = 0

    @property
    def dim(self) -> int:
        return self.cost_sum.shape[0]

    def update(self, x: np.ndarray, c: np.ndarray) -> None:
        self.cumulative_cost += float(np.dot(c, x))
        self.cost_sum += c
        self.rounds += 1

    def extend(self, xs, cs) -> "RegretLedger":
        for x, c in zip(np.asarray(xs, dtype=float), np.asarray(cs, dtype=float)):
            self.update(x, c)
        return self

    def merged(self, other: "RegretLedger") -> "RegretLedger":
        """Ledger of this interval followed by ``other``'s interval."""
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        out = RegretLedger(self.dim)
        out.cumulative_cost = self.cumulative_cost + other.cumulative_cost
        out.cost_sum = self.cost_sum + other.cost_sum
        out.rounds = self.rounds + other.rounds
        return out

    def copy(self) -> "RegretLedger":
        out = RegretLedger(self.dim)
        out.cumulative_cost = self.cumulative_cost
        out.cost_sum = self.cost_sum.copy()
        out.rounds = self.rounds
        return out

    def worst_case_regret(self) -> float:
        return worst_case_regret(self)

    def regret_vs(self, u) -> float:
        return regret_vs_comparator(self, u)

    def __repr__(self) -> str:
        return (f"RegretLedger(rounds={self.rounds}, "
                f"cumulative_cost={self.cumulative_cost:.6g}, "
                f"worst_case_regret={self.worst_case_regret():.6g})")


def worst_case_regret(ledger: RegretLedger) -> float:
    return ledger.cumulative_cost + math.sqrt(_sqnorm(ledger.cost_sum))


def regret_vs_comparator(ledger: RegretLedger, u) -> float:
    u = np.asarray(u, dtype=float)
    if u.shape != ledger.cost_sum.shape:
        raise ValueError(f"comparator shape {u.shape} != {ledger.cost_sum.shape}")
    return ledger.cumulative_cost - float(np.dot(ledger.cost_sum, u))


class Learner:
    """Online learner protocol: ``observe_hints`` then ``observe_cost``, per round.

    Subclasses implement ``_predict(hints)`` and ``_update(cost)``; the base
    class enforces alternation, validates inputs and keeps a ledger of the
    decisions actually played.  ``reset`` must restore the initial state.
    """

    constrained = True
    uses_hints = True

    def __init__(self, dim: int):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.dim = int(dim)
        self._x = None
        self.ledger = RegretLedger(self.dim)

    def observe_hints(self, hints=None, validate: bool = True) -> np.ndarray:
        """Emit this round's decision.

        ``validate=False`` skips the norm checks; wrappers use it for inputs
        they have already validated.
        """
        if self._x is not None:
            raise RuntimeError("observe_hints called twice without observe_cost")
        if hints is not None and self.uses_hints:
            if validate:
                hints = check_hint_matrix(hints, self.dim)
            elif hints.ndim == 1:
                hints = hints[None, :]
        x = self._predict(hints)
        if self.constrained:
            n2 = _sqnorm(x)
            if n2 > 1.0:
                if n2 > (1.0 + NORM_TOL) ** 2:
                    raise AssertionError(f"decision left the unit ball: {math.sqrt(n2)}")
                x = x / math.sqrt(n2)
        self._x = x
        return x

    def observe_cost(self, cost, validate: bool = True) -> None:
        if self._x is None:
            raise RuntimeError("observe_cost called before observe_hints")
        if validate:
            c = check_unit(cost, "cost")
            if c.shape != (self.dim,):
                raise ValueError(f"cost shape {c.shape} != ({self.dim},)")
        else:
            c = cost
        self.ledger.update(self._x, c)
        self._x = None
        self._update(c)

    def reset(self) -> None:
        self._x = None
        self.ledger = RegretLedger(self.dim)
        self._reset()

    def _predict(self, hints) -> np.ndarray:
        raise NotImplementedError

    def _update(self, cost: np.ndarray) -> None:
        raise NotImplementedError

    def _reset(self) -> None:
        raise NotImplementedError


def play(learner: Learner, costs, hints=None) -> np.ndarray:
    """Run ``learner`` over a whole sequence; returns the ``(T, d)`` decisions.

    ``hints`` may be ``None``, ``(T, d)`` for a single hint sequence or
    ``(T, K, d)``.
    """
    costs = np.asarray(costs, dtype=float)
    T = costs.shape[0]
    xs = np.empty_like(costs)
    for t in range(T):
        xs[t] = learner.observe_hints(None if hints is None else hints[t])
        learner.observe_cost(costs[t])
    return xs


PRNG_NAME = "numpy.random.Philox (4x64 counter-based) seeded via numpy SeedSequence"


def make_rng(seed=0, *stream) -> np.random.Generator:
    """Philox generator for ``seed`` and an optional integer stream path.

    ``make_rng(s, trial, k)`` is independent of ``make_rng(s, trial, j)``
    for ``j != k``; the same arguments always give the same stream.
    """
    if isinstance(seed, np.random.SeedSequence):
        ss = seed
        if stream:
            ss = np.random.SeedSequence(ss.entropy, spawn_key=tuple(ss.spawn_key) + tuple(stream))
    else:
        ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(s) for s in stream))
    return np.random.Generator(np.random.Philox(ss))
