"""Unconstrained learning with K hints via coin betting.

The composite learner plays ``x_t + sum_i y_t^(i) h_t^(i)``: ``x_t`` comes from
a d-dimensional parameter-free learner fed ``c_t``, and ``y_t^(i)`` from a
one-dimensional bettor fed ``<c_t, h_t^(i)>``.
"""

from __future__ import annotations

import math

import numpy as np

from .combiners import AdaptiveOGD
from .core import Learner


class KTBettor:
    """Krichevsky-Trofimov coin betting on scalar costs ``g_t in [-1, 1]``.

    Bets ``y_t = beta_t W_{t-1}`` with ``beta_t = -sum_{s<t} g_s / t``; wealth
    evolves as ``W_t = W_{t-1} (1 - g_t beta_t)`` starting from ``epsilon``.
    Wealth is kept as a log so that long winning streaks cannot overflow the
    state; a bet too large for float64 raises ``OverflowError``.
    """

    def __init__(self, epsilon: float = 1.0):
        if epsilon <= 0:
            raise ValueError("initial wealth must be positive")
        self.epsilon = float(epsilon)
        self.reset()

    def reset(self) -> None:
        self.log_wealth = math.log(self.epsilon)
        self.neg_cost_sum = 0.0
        self.t = 0
        self.beta = 0.0

    @property
    def wealth(self) -> float:
        return math.exp(self.log_wealth) if self.log_wealth < 709.0 else math.inf

    def predict(self) -> float:
        self.beta = self.neg_cost_sum / (self.t + 1)
        if self.beta == 0.0:
            return 0.0
        y = self.beta * self.wealth
        if not math.isfinite(y):
            raise OverflowError(
                f"bet overflowed float64 at round {self.t + 1} (log wealth {self.log_wealth:.1f})")
        return y

    def update(self, g: float) -> None:
        if abs(g) > 1.0 + 1e-12:
            raise ValueError(f"scalar cost {g} outside [-1, 1]")
        self.log_wealth += math.log1p(-g * self.beta)
        self.neg_cost_sum -= g
        self.t += 1


def parameter_free_1d_step(bettor: KTBettor, g: float) -> float:
    """Play one round of ``bettor`` against cost ``g``; returns the bet made."""
    y = bettor.predict()
    bettor.update(g)
    return y


class ParameterFreeLearner(Learner):
    """Dimension-free reduction: a KT magnitude times a unit-ball direction.

    The direction ``z_t`` comes from adaptive OGD on the ball fed the linear
    costs ``c_t``; the magnitude bettor sees ``<c_t, z_t>``.
    """

    constrained = False
    uses_hints = False

    def __init__(self, dim: int, epsilon: float = 1.0):
        super().__init__(dim)
        self.epsilon = epsilon
        self.bettor = KTBettor(epsilon)
        self.direction = AdaptiveOGD(dim)
        self._reset()

    def _reset(self):
        self.bettor.reset()
        self.direction.reset()
        self._z = None

    def _predict(self, hints):
        self._z = self.direction.observe_hints(None, validate=False)
        return self.bettor.predict() * self._z

    def _update(self, c):
        self.bettor.update(float(np.clip(np.dot(c, self._z), -1.0, 1.0)))
        self.direction.observe_cost(c, validate=False)


class UnconstrainedHints(Learner):
    """Composite unconstrained learner for K hint sequences.

    Wealth ``epsilon`` goes to the d-dimensional learner and ``epsilon / K``
    to each scalar bettor.
    """

    constrained = False

    def __init__(self, dim: int, K: int, epsilon: float = 1.0, base: Learner | None = None):
        super().__init__(dim)
        self.K = int(K)
        self.epsilon = float(epsilon)
        self.base = base if base is not None else ParameterFreeLearner(dim, epsilon)
        self.bettors = [KTBettor(epsilon / K) for _ in range(self.K)] if K else []
        self._reset()

    def _reset(self):
        self.base.reset()
        for b in self.bettors:
            b.reset()
        self._H = None
        self.x_base = None
        self.y = np.zeros(self.K)

    def _predict(self, hints):
        x = self.base.observe_hints(None, validate=False)
        self.x_base = x
        if self.K == 0:
            return x.copy()
        if hints is None:
            hints = np.zeros((self.K, self.dim))
        elif hints.shape[0] != self.K:
            raise ValueError(f"expected {self.K} hints, got {hints.shape[0]}")
        self._H = hints
        self.y = np.array([b.predict() for b in self.bettors])
        return x + self.y @ hints

    def _update(self, c):
        self.base.observe_cost(c, validate=False)
        if self.K:
            scalar = np.clip(self._H @ c, -1.0, 1.0)
            for b, g in zip(self.bettors, scalar):
                b.update(float(g))


__all__ = [
    "KTBettor",
    "ParameterFreeLearner",
    "UnconstrainedHints",
    "parameter_free_1d_step",
]
