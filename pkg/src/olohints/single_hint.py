"""Single-hint learner for a known correlation threshold ``alpha``.

Each round the learner shifts the output of an inner strongly-convex learner
along the hint, ``x_t = xbar_t + (||xbar_t||^2 - 1) / (2 r_t) * h_t``.  The
radius ``r_t`` only grows on rounds where the hint points the wrong way, and
the inner learner sees the quadratic surrogate

    l_t(x) = <c_t, x> + |<c_t, h_t>| / (2 r_t) * (||x||^2 - 1),

which is ``|<c_t, h_t>| / r_t`` strongly convex.  An extra damping term
``damp`` solving ``damp (S + damp) = ||c_t||^2`` keeps the step size finite
when the hints carry no curvature.
"""

from __future__ import annotations

import math

import numpy as np

from .core import Learner


def solve_damping(S: float, cost_norm_sq: float) -> float:
    """Non-negative root of ``damp * (S + damp) = cost_norm_sq``."""
    if S < 0 or cost_norm_sq < 0:
        raise ValueError("solve_damping needs S >= 0 and cost_norm_sq >= 0")
    if cost_norm_sq == 0.0:
        return 0.0
    # 2q / (S + sqrt(S^2 + 4q)) avoids cancellation when S^2 >> q
    return 2.0 * cost_norm_sq / (S + math.sqrt(S * S + 4.0 * cost_norm_sq))


def shift_decision(xbar: np.ndarray, h: np.ndarray, r: float) -> np.ndarray:
    if r < 1.0:
        raise ValueError(f"radius must be >= 1, got {r}")
    coef = (float(np.dot(xbar, xbar)) - 1.0) / (2.0 * r)
    return xbar + coef * h


def update_radius(r: float, inner_product: float, alpha: float, horizon: float) -> float:
    if horizon < 2:
        raise ValueError("horizon must be >= 2 so that log(T) > 0")
    if inner_product >= 0.0:
        return r
    return math.sqrt(r * r + alpha * (-inner_product) / math.log(horizon))


class StronglyConvexOGD:
    """Projected gradient descent with step ``1 / (curvature_sum + damping_sum)``.

    Plays the iterate ``x``; ``step(grad, curv, damp)`` folds this round's
    curvature into the running sums before stepping.  A round with zero
    total curvature so far is skipped.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.reset()

    def reset(self) -> None:
        self.x = np.zeros(self.dim)
        self.curvature_sum = 0.0
        self.damping_sum = 0.0

    def step(self, grad: np.ndarray, curv: float, damp: float) -> np.ndarray:
        self.curvature_sum += curv
        self.damping_sum += damp
        denom = self.curvature_sum + self.damping_sum
        if denom > 0.0:
            y = self.x - grad / denom
            n2 = float(np.dot(y, y))
            self.x = y if n2 <= 1.0 else y / math.sqrt(n2)
        return self.x


class OneHint(Learner):
    """Single-hint learner tuned for hints that are ``alpha``-correlated.

    Parameters
    ----------
    alpha : float
        Target correlation in (0, 1); a hint is good when
        ``<c_t, h_t> >= alpha * ||c_t||^2``.
    horizon : float
        Horizon ``T`` used in the radius schedule (``log T`` must be positive).
    dim : int
        Ambient dimension.
    inner : optional
        Replacement inner learner exposing ``x``, ``step`` and ``reset``.
    """

    def __init__(self, alpha: float, horizon: float, dim: int, inner=None):
        super().__init__(dim)
        if not 0.0 < alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
        if horizon < 2:
            raise ValueError("horizon must be >= 2")
        self.alpha = float(alpha)
        self.horizon = horizon
        self._log_T = math.log(horizon)
        self.inner = inner if inner is not None else StronglyConvexOGD(dim)
        self._reset()

    def _reset(self) -> None:
        self.inner.reset()
        self.r = 1.0
        self.damping_residual = 0.0
        self._h = None

    @property
    def curvature_sum(self) -> float:
        return self.inner.curvature_sum

    @property
    def damping_sum(self) -> float:
        return self.inner.damping_sum

    def _predict(self, hints) -> np.ndarray:
        if hints is None:
            h = np.zeros(self.dim)
        else:
            if hints.shape[0] != 1:
                raise ValueError("OneHint takes exactly one hint per round")
            h = hints[0]
        self._h = h
        xbar = self.inner.x
        return xbar + ((float(np.dot(xbar, xbar)) - 1.0) / (2.0 * self.r)) * h

    def _update(self, c: np.ndarray) -> None:
        h = self._h
        ip = float(np.dot(c, h))
        r = self.r
        curv = abs(ip) / r
        c2 = float(np.dot(c, c))
        S = self.inner.curvature_sum + self.inner.damping_sum + curv
        damp = solve_damping(S, c2)
        self.damping_residual = abs(damp * (S + damp) - c2)
        grad = c + curv * self.inner.x
        self.inner.step(grad, curv, damp)
        if ip < 0.0:
            self.r = math.sqrt(r * r - self.alpha * ip / self._log_T)


def surrogate_loss(x: np.ndarray, c: np.ndarray, h: np.ndarray, r: float) -> float:
    """The inner learner's per-round loss ``<c, x> + |<c,h>|/(2r) (||x||^2 - 1)``."""
    return float(np.dot(c, x)) + abs(float(np.dot(c, h))) / (2.0 * r) * (float(np.dot(x, x)) - 1.0)


def surrogate_grad(x: np.ndarray, c: np.ndarray, h: np.ndarray, r: float) -> np.ndarray:
    return c + (abs(float(np.dot(c, h))) / r) * x


__all__ = [
    "OneHint",
    "StronglyConvexOGD",
    "shift_decision",
    "solve_damping",
    "surrogate_grad",
    "surrogate_loss",
    "update_radius",
]
