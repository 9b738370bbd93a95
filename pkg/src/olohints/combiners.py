"""Combining online learners with doubling guesses on their realized regret.

Both combiners track, for each base learner, its worst-case regret over the
unit ball since it was last reset, measured on half-scaled costs so that
``sup_{x,y in B} <c, x - y> <= 1``.  A learner whose tracked regret exceeds
``regret_guess`` is abandoned; when every learner has failed the guess
doubles.

Base learners always receive the caller's costs; only the trackers see the
half-scaled copy.  Reported regret (``ledger``) is in caller units.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import brentq, minimize

from .core import Learner, RegretLedger, make_rng
from .multi_hint import KHints

BALL_DIAMETER = 2.0


class MonotoneBound:
    """Regret certificate evaluated on a cost interval.

    ``fn`` maps an ``(n, d)`` array of costs to a bound on the worst-case
    regret of the learner when started fresh on exactly those costs.  It
    must not decrease when the interval grows.
    """

    def __init__(self, name: str, fn):
        self.name = name
        self.fn = fn

    def __call__(self, costs) -> float:
        costs = np.asarray(costs, dtype=float)
        if costs.shape[0] == 0:
            return 0.0
        return float(self.fn(costs))

    def __repr__(self) -> str:
        return f"MonotoneBound({self.name!r})"


def evaluate_monotone_bound(evaluator: MonotoneBound, costs) -> float:
    return evaluator(costs)


def aogd_bound(costs) -> float:
    # D2^2 / (2 eta_T) + sum eta_t ||c_t||^2 / 2 with eta_t = 1/sqrt(S_t)
    return 1.5 * BALL_DIAMETER * math.sqrt(float(np.sum(np.asarray(costs) ** 2)))


def adagrad_bound(costs) -> float:
    per_coord = np.sqrt(np.sum(np.asarray(costs) ** 2, axis=0))
    return 1.5 * BALL_DIAMETER * float(np.sum(per_coord))


def pnorm_radius(p: float, dim: int) -> float:
    """``sup ||u||_p`` over the Euclidean unit ball."""
    return dim ** max(0.0, 1.0 / p - 0.5)


def pnorm_bound(p: float, dim: int):
    q = p / (p - 1.0)
    D = pnorm_radius(p, dim)

    def fn(costs):
        S = float(np.sum(np.sum(np.abs(costs) ** q, axis=1) ** (2.0 / q)))
        return 1.5 * D * math.sqrt(1.0 + S) / math.sqrt(p - 1.0)

    return fn


class ConstantLearner(Learner):
    """Always plays the same point; handy for exercising the combiners."""

    uses_hints = False

    def __init__(self, x):
        x = np.asarray(x, dtype=float)
        super().__init__(x.shape[0])
        self.x = x
        self.monotone_bound = MonotoneBound(
            "constant",
            lambda cs: float(np.sum(np.linalg.norm(cs, axis=1) + cs @ self.x)))

    def _predict(self, hints):
        return self.x.copy()

    def _update(self, c):
        pass

    def _reset(self):
        pass


class AdaptiveOGD(Learner):
    """Projected OGD on the ball with step ``1 / sqrt(sum ||c||^2)``."""

    uses_hints = False

    def __init__(self, dim: int):
        super().__init__(dim)
        self.monotone_bound = MonotoneBound("adaptive-ogd", aogd_bound)
        self._reset()

    def _reset(self):
        self.x = np.zeros(self.dim)
        self.sq_sum = 0.0

    def _predict(self, hints):
        return self.x

    def _update(self, c):
        self.sq_sum += float(np.dot(c, c))
        if self.sq_sum > 0.0:
            y = self.x - c / math.sqrt(self.sq_sum)
            n2 = float(np.dot(y, y))
            self.x = y if n2 <= 1.0 else y / math.sqrt(n2)


def mahalanobis_ball_projection(y: np.ndarray, a: np.ndarray) -> np.ndarray:
    """``argmin_{||x|| <= 1} sum a_i (x_i - y_i)^2`` for weights ``a >= 0``.

    Coordinates with zero weight cost nothing, so they are set to zero to
    leave the whole radius to the weighted ones.
    """
    if float(np.dot(y, y)) <= 1.0:
        return y
    x = np.zeros_like(y)
    on = a > 0
    a_on, ay = a[on], a[on] * y[on]

    def excess(mu):
        return float(np.sum((ay / (a_on + mu)) ** 2)) - 1.0

    hi = float(np.linalg.norm(ay))
    if hi == 0.0 or excess(0.0) <= 0.0:
        x[on] = y[on]
        return x
    mu = brentq(excess, 0.0, hi, xtol=1e-14, rtol=1e-12)
    x[on] = ay / (a_on + mu)
    n2 = float(np.dot(x, x))
    return x if n2 <= 1.0 else x / math.sqrt(n2)


class DiagonalAdagrad(Learner):
    """Per-coordinate steps ``1 / sqrt(sum_t c_{t,i}^2)``, projected onto the ball
    in the matching diagonal norm."""

    uses_hints = False

    def __init__(self, dim: int):
        super().__init__(dim)
        self.monotone_bound = MonotoneBound("diagonal-adagrad", adagrad_bound)
        self._reset()

    def _reset(self):
        self.x = np.zeros(self.dim)
        self.sq_sums = np.zeros(self.dim)

    def _predict(self, hints):
        return self.x

    def _update(self, c):
        self.sq_sums += c * c
        a = np.sqrt(self.sq_sums)
        active = a > 0
        y = self.x.copy()
        y[active] -= c[active] / a[active]
        self.x = mahalanobis_ball_projection(y, a)


class PNormFTRL(Learner):
    """FTRL with regularizer ``||x||_p^2 / (2 eta_t)`` restricted to the Euclidean ball.

    ``eta_t = D_p sqrt(p - 1) / sqrt(1 + sum ||c||_q^2)`` with ``D_p`` the
    largest p-norm on the ball.  The argmin is closed form when it lands in
    the ball and is solved numerically otherwise.
    """

    uses_hints = False

    def __init__(self, dim: int, p: float):
        super().__init__(dim)
        if not 1.0 < p <= 2.0:
            raise ValueError("p must lie in (1, 2]")
        self.p = float(p)
        self.q = self.p / (self.p - 1.0)
        self.radius = pnorm_radius(self.p, dim)
        self.monotone_bound = MonotoneBound(f"p-norm(p={self.p:.4g})", pnorm_bound(self.p, dim))
        self._reset()

    def _reset(self):
        self.grad_sum = np.zeros(self.dim)
        self.sq_sum = 0.0
        self.x = np.zeros(self.dim)

    def _predict(self, hints):
        return self.x

    def _solve(self, eta: float) -> np.ndarray:
        G = self.grad_sum
        gq = float(np.sum(np.abs(G) ** self.q) ** (1.0 / self.q))
        if gq == 0.0:
            return np.zeros(self.dim)
        # gradient of ||.||_q^2 / 2 is the inverse of the p-norm mirror map
        x = -eta * np.sign(G) * np.abs(G) ** (self.q - 1.0) / gq ** (self.q - 2.0)
        if float(np.dot(x, x)) <= 1.0:
            return x
        p = self.p

        def obj(z):
            zp = float(np.sum(np.abs(z) ** p))
            return float(np.dot(G, z)) + zp ** (2.0 / p) / (2.0 * eta)

        res = minimize(obj, x / np.linalg.norm(x), method="SLSQP",
                       constraints=[{"type": "ineq", "fun": lambda z: 1.0 - float(np.dot(z, z))}],
                       options={"ftol": 1e-12, "maxiter": 200})
        z = res.x
        n2 = float(np.dot(z, z))
        return z if n2 <= 1.0 else z / math.sqrt(n2)

    def _update(self, c):
        self.grad_sum += c
        self.sq_sum += float(np.sum(np.abs(c) ** self.q) ** (2.0 / self.q))
        eta = self.radius * math.sqrt(self.p - 1.0) / math.sqrt(1.0 + self.sq_sum)
        self.x = self._solve(eta)


def pnorm_grid(dim: int) -> list[tuple[float, float]]:
    """``(q_i, p_i)`` for ``i = 1..floor(log(d)/2)`` with ``1/q_i = 1/q_{i-1} - 1/log d``, ``q_0 = 2``."""
    if dim < 2:
        return []
    log_d = math.log(dim)
    K = int(math.floor(log_d / 2.0))
    grid = []
    inv_q = 0.5
    for _ in range(K):
        inv_q -= 1.0 / log_d
        q = 1.0 / inv_q
        grid.append((q, q / (q - 1.0)))
    return grid


ZOO_KINDS = ("adaptive-ogd", "diagonal-adagrad", "p-norm-mirror-descent")


def base_learner_zoo(kind: str, dim: int, **params) -> Learner:
    """Build a hint-free base learner by name.

    ``p-norm-mirror-descent`` takes an optional ``p``; without it the whole
    p-norm grid for ``dim`` is wrapped in a deterministic combiner.
    """
    if kind == "adaptive-ogd":
        return AdaptiveOGD(dim)
    if kind == "diagonal-adagrad":
        return DiagonalAdagrad(dim)
    if kind == "p-norm-mirror-descent":
        if "p" in params:
            return PNormFTRL(dim, float(params["p"]))
        grid = pnorm_grid(dim)
        if not grid:
            raise ValueError(f"p-norm grid is empty for dimension {dim}")
        return DeterministicCombiner([PNormFTRL(dim, p) for _, p in grid])
    raise ValueError(f"unknown learner kind {kind!r}; choose from {', '.join(ZOO_KINDS)}")


def combiner_guarantee(K: int, min_bound: float) -> float:
    """Worst-case guarantee ``K (4 + 4 min_i R_i)`` in half-scaled cost units."""
    return K * (4.0 + 4.0 * min_bound)


def randomized_guarantee(K: int, min_bound: float) -> float:
    """Expected-regret guarantee against an oblivious adversary."""
    return math.log2(K + 1) * (4.0 + 4.0 * min_bound)


class _CombinerBase(Learner):
    def __init__(self, learners, rescale: bool = True):
        learners = list(learners)
        if not learners:
            raise ValueError("need at least one base learner")
        dim = learners[0].dim
        if any(lr.dim != dim for lr in learners):
            raise ValueError("base learners disagree on dimension")
        super().__init__(dim)
        self.learners = learners
        self.K = len(learners)
        self.rescale = bool(rescale)
        self.scale = 0.5 if rescale else 1.0

    def _tracked_cost(self, c: np.ndarray) -> np.ndarray:
        if not self.rescale and float(np.dot(c, c)) > (0.5 + 1e-9) ** 2:
            raise ValueError(
                "combiner needs cost range sup <c, x - y> <= 1, i.e. ||c|| <= 1/2; "
                "rescale the costs by 1/2 or construct the combiner with rescale=True")
        return self.scale * c

    @staticmethod
    def _hints_for(learner, hints):
        return hints if learner.uses_hints else None

    @property
    def phase_count(self) -> int:
        return len(self.subphases_per_phase)


class DeterministicCombiner(_CombinerBase):
    """Cycle through the learners, doubling ``regret_guess`` after each full pass."""

    def __init__(self, learners, rescale: bool = True):
        super().__init__(learners, rescale)
        self._reset()

    def _reset(self):
        self.i = 0
        self.regret_guess = 1.0
        self.tracker = RegretLedger(self.dim)
        self.subphases_per_phase = [1]
        self.switch_rounds: list[int] = []
        self._t = 0
        self._y = None
        self.learners[0].reset()

    @property
    def tracked_regret(self) -> float:
        return self.tracker.worst_case_regret()

    def _predict(self, hints):
        lr = self.learners[self.i]
        self._y = lr.observe_hints(self._hints_for(lr, hints), validate=False)
        return self._y

    def _update(self, c):
        g = self._tracked_cost(c)
        self.learners[self.i].observe_cost(c, validate=False)
        self.tracker.update(self._y, g)
        self._t += 1
        if self.tracker.worst_case_regret() > self.regret_guess:
            if self.i == self.K - 1:
                self.regret_guess *= 2.0
                self.subphases_per_phase.append(0)
            self.i = (self.i + 1) % self.K
            self.tracker = RegretLedger(self.dim)
            self.learners[self.i].reset()
            self.subphases_per_phase[-1] += 1
            self.switch_rounds.append(self._t)


class RandomizedCombiner(_CombinerBase):
    """Simulate every surviving candidate and follow one chosen uniformly at random.

    ``reset_policy="candidates"`` restarts every surviving candidate when a new
    sub-phase begins; ``"chosen"`` restarts only the newly chosen learner.
    On a refill of the candidate set all learners restart.
    """

    def __init__(self, learners, seed=0, rescale: bool = True,
                 reset_policy: str = "candidates"):
        if reset_policy not in ("candidates", "chosen"):
            raise ValueError("reset_policy must be 'candidates' or 'chosen'")
        super().__init__(learners, rescale)
        self.seed = seed
        self.reset_policy = reset_policy
        self._reset()

    def _reset(self):
        self.rng = make_rng(self.seed)
        self.regret_guess = 1.0
        self.cum = np.zeros(self.K)
        self.cost_sums = np.zeros((self.K, self.dim))
        self.candidates = list(range(self.K))
        for lr in self.learners:
            lr.reset()
        self.i = int(self.rng.integers(self.K))
        self.subphases_per_phase = [1]
        self.switch_rounds: list[int] = []
        self._t = 0
        self._ys = None

    def tracked_regrets(self) -> np.ndarray:
        return self.cum + np.sqrt(np.einsum("kd,kd->k", self.cost_sums, self.cost_sums))

    def _restart(self, j: int) -> None:
        self.learners[j].reset()
        self.cum[j] = 0.0
        self.cost_sums[j] = 0.0

    def _predict(self, hints):
        ys = {}
        for j in self.candidates:
            lr = self.learners[j]
            ys[j] = lr.observe_hints(self._hints_for(lr, hints), validate=False)
        self._ys = ys
        return ys[self.i]

    def _update(self, c):
        g = self._tracked_cost(c)
        C = self.candidates
        Y = np.empty((len(C), self.dim))
        for k, j in enumerate(C):
            self.learners[j].observe_cost(c, validate=False)
            Y[k] = self._ys[j]
        self.cum[C] += Y @ g
        self.cost_sums[C] += g
        self._t += 1
        r = self.tracked_regrets()
        C = [j for j in C if r[j] <= self.regret_guess]
        self.candidates = C
        if self.i in C:
            return
        if not C:
            C = self.candidates = list(range(self.K))
            self.regret_guess *= 2.0
            self.subphases_per_phase.append(0)
            for j in C:
                self._restart(j)
            self.i = C[int(self.rng.integers(len(C)))]
        elif self.reset_policy == "candidates":
            for j in C:
                self._restart(j)
            self.i = C[int(self.rng.integers(len(C)))]
        else:
            self.i = C[int(self.rng.integers(len(C)))]
            self._restart(self.i)
        self.subphases_per_phase[-1] += 1
        self.switch_rounds.append(self._t)


def alpha_grid(horizon: float) -> list[float]:
    """``2^-i`` for ``i = 1..ceil(log2 T)``."""
    if horizon < 2:
        raise ValueError("horizon must be >= 2")
    n = max(1, math.ceil(math.log2(horizon)))
    return [2.0 ** -i for i in range(1, n + 1)]


def unknown_alpha_learner(factory, horizon: float, seed=0, **combiner_kw) -> RandomizedCombiner:
    """Randomized combiner over ``factory(alpha)`` for the ``alpha_grid(horizon)``."""
    return RandomizedCombiner([factory(a) for a in alpha_grid(horizon)], seed=seed, **combiner_kw)


def khints_factory(horizon: float, dim: int, K: int):
    return lambda alpha: KHints(alpha, horizon, dim, K)


__all__ = [
    "AdaptiveOGD",
    "ConstantLearner",
    "DeterministicCombiner",
    "DiagonalAdagrad",
    "MonotoneBound",
    "PNormFTRL",
    "RandomizedCombiner",
    "ZOO_KINDS",
    "adagrad_bound",
    "alpha_grid",
    "aogd_bound",
    "base_learner_zoo",
    "combiner_guarantee",
    "evaluate_monotone_bound",
    "khints_factory",
    "mahalanobis_ball_projection",
    "pnorm_bound",
    "pnorm_grid",
    "randomized_guarantee",
    "unknown_alpha_learner",
]
