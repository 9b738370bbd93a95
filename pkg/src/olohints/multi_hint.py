"""Learning with K hint sequences.

``KHints`` learns a convex combination of the hints with entropic FTRL on a
smoothed hinge loss and feeds the blended hint to a ``OneHint`` learner run
at half the target correlation.  ``MWUHints`` is the simpler baseline that
samples one hint sequence per round with multiplicative weights.
"""

from __future__ import annotations

import math

import numpy as np

from .core import Learner, make_rng
from .single_hint import OneHint


def smoothed_hinge(a, b):
    """Smoothed hinge ``l(a, b)``: zero above ``b``, quadratic on ``[0, b]``, linear below 0.

    Works elementwise on arrays.  For ``b = 0`` it is the limit ``max(0, -2a)``.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if np.any(b < 0):
        raise ValueError("smoothed_hinge needs b >= 0")
    safe_b = np.where(b > 0, b, 1.0)
    mid = (b - a) ** 2 / safe_b
    out = np.where(a > b, 0.0, np.where(a >= 0, mid, b - 2.0 * a))
    out = np.where(b > 0, out, np.maximum(0.0, -2.0 * a))
    return out[()] if out.ndim == 0 else out


def smoothed_hinge_grad(a, b):
    """Derivative of ``smoothed_hinge`` in ``a`` (the function is C^1 for b > 0)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if np.any(b < 0):
        raise ValueError("smoothed_hinge_grad needs b >= 0")
    safe_b = np.where(b > 0, b, 1.0)
    out = np.where(a > b, 0.0, np.where(a >= 0, 2.0 * (a - b) / safe_b, -2.0))
    out = np.where(b > 0, out, np.where(a < 0, -2.0, 0.0))
    return out[()] if out.ndim == 0 else out


def _hinge_scalar(a: float, b: float) -> tuple[float, float]:
    # value and derivative; hot path for KHints
    if b <= 0.0:
        return (-2.0 * a, -2.0) if a < 0.0 else (0.0, 0.0)
    if a > b:
        return 0.0, 0.0
    if a >= 0.0:
        return (b - a) ** 2 / b, 2.0 * (a - b) / b
    return b - 2.0 * a, -2.0


def simplex_loss(w, c, H, alpha: float) -> tuple[float, np.ndarray]:
    """Loss ``l(<c, H^T w>, alpha ||c||^2)`` of a hint blend and its gradient in ``w``."""
    w = np.asarray(w, dtype=float)
    c = np.asarray(c, dtype=float)
    corr = np.asarray(H, dtype=float) @ c
    value, slope = _hinge_scalar(float(np.dot(corr, w)), alpha * float(np.dot(c, c)))
    return value, slope * corr


def entropy_regularizer(w) -> float:
    """``log K + sum w_i log w_i``; zero at the uniform point, ``log K`` at a vertex."""
    w = np.asarray(w, dtype=float)
    pos = w > 0
    return math.log(w.size) + float(np.sum(w[pos] * np.log(w[pos])))


def ftrl_scale(sq_inf_sum: float, K: int) -> float:
    logK = math.log(K)
    return math.sqrt((logK + sq_inf_sum) / logK)


def ftrl_objective(w, grad_sum, sq_inf_sum: float) -> float:
    w = np.asarray(w, dtype=float)
    K = w.shape[-1]
    return float(np.dot(grad_sum, w)) + ftrl_scale(sq_inf_sum, K) * entropy_regularizer(w)


class FtrlState:
    """Cumulative gradient and squared sup-norm sum of the simplex learner."""

    def __init__(self, K: int):
        if K < 2:
            raise ValueError("FTRL over the simplex needs K >= 2")
        self.K = K
        self.grad_sum = np.zeros(K)
        self.sq_inf_sum = 0.0

    def add(self, g: np.ndarray) -> None:
        self.grad_sum += g
        self.sq_inf_sum += float(np.max(np.abs(g))) ** 2


def ftrl_simplex_update(state: FtrlState) -> np.ndarray:
    """Exact minimizer of ``<G, w> + eta * psi(w)`` over the simplex (a softmax)."""
    if state.K < 2:
        raise ValueError("FTRL over the simplex needs K >= 2")
    eta = ftrl_scale(state.sq_inf_sum, state.K)
    z = -state.grad_sum / eta
    z -= z.max()
    w = np.exp(z)
    # keep every coordinate strictly positive after underflow
    np.maximum(w, np.finfo(float).tiny, out=w)
    return w / w.sum()


class KHints(Learner):
    """Constrained learner that competes with the best convex combination of K hints.

    The simplex weights start uniform; after each cost the smoothed hinge
    gradient at the played weights is folded into an entropic FTRL whose
    regularizer scale is ``sqrt((log K + sum ||g||_inf^2) / log K)``.
    With ``K == 1`` the blend is the single hint and FTRL is bypassed.
    """

    def __init__(self, alpha: float, horizon: float, dim: int, K: int):
        super().__init__(dim)
        if not 0.0 < alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
        if K < 1:
            raise ValueError("need at least one hint sequence")
        self.alpha = float(alpha)
        self.horizon = horizon
        self.K = int(K)
        self.single = OneHint(alpha / 2.0, horizon, dim)
        self._reset()

    def _reset(self) -> None:
        self.single.reset()
        self.ftrl = FtrlState(self.K) if self.K > 1 else None
        self.w = np.full(self.K, 1.0 / self.K)
        self.loss_sum = 0.0
        self._H = None

    def _predict(self, hints) -> np.ndarray:
        if hints is None:
            hints = np.zeros((self.K, self.dim))
        elif hints.shape[0] != self.K:
            raise ValueError(f"expected {self.K} hints, got {hints.shape[0]}")
        self._H = hints
        h = self.w @ hints
        n2 = float(np.dot(h, h))
        if n2 > 1.0:
            h = h / math.sqrt(n2)
        return self.single.observe_hints(h, validate=False)

    def _update(self, c: np.ndarray) -> None:
        self.single.observe_cost(c, validate=False)
        # inlined simplex_loss; this is the hot path
        corr = self._H @ c
        value, slope = _hinge_scalar(float(corr @ self.w), self.alpha * float(c @ c))
        g = slope * corr
        self.loss_sum += value
        if self.ftrl is not None:
            self.ftrl.add(g)
            self.w = ftrl_simplex_update(self.ftrl)


class MWUHints(Learner):
    """Samples one hint sequence per round with multiplicative weights.

    Expert ``i`` suffers binary loss 1 when its hint is bad.  With
    ``loss_rule="signed"`` a hint is good iff ``<c, h> >= alpha ||c||^2``;
    ``loss_rule="absolute"`` uses ``|<c, h>| >= alpha ||c||`` instead.
    Weights are multiplied by ``1 - eta * loss``.  The chosen hint goes to a
    ``OneHint`` learner at threshold ``alpha``.
    """

    def __init__(self, alpha: float, horizon: float, dim: int, K: int,
                 seed=0, eta: float = 0.5, loss_rule: str = "signed"):
        super().__init__(dim)
        if loss_rule not in ("signed", "absolute"):
            raise ValueError("loss_rule must be 'signed' or 'absolute'")
        if not 0.0 < eta < 1.0:
            raise ValueError("eta must lie in (0, 1)")
        self.alpha = float(alpha)
        self.K = int(K)
        self.eta = float(eta)
        self.loss_rule = loss_rule
        self.seed = seed
        self.single = OneHint(alpha, horizon, dim)
        self._reset()

    def _reset(self) -> None:
        self.single.reset()
        self.rng = make_rng(self.seed)
        self.weights = np.full(self.K, 1.0 / self.K)
        self.choices: list[int] = []
        self._H = None

    def expert_losses(self, c: np.ndarray, H: np.ndarray) -> np.ndarray:
        corr = H @ c
        if self.loss_rule == "signed":
            good = corr >= self.alpha * float(np.dot(c, c))
        else:
            good = np.abs(corr) >= self.alpha * math.sqrt(float(np.dot(c, c)))
        return np.where(good, 0.0, 1.0)

    def _predict(self, hints) -> np.ndarray:
        if hints is None:
            hints = np.zeros((self.K, self.dim))
        elif hints.shape[0] != self.K:
            raise ValueError(f"expected {self.K} hints, got {hints.shape[0]}")
        self._H = hints
        i = int(self.rng.choice(self.K, p=self.weights)) if self.K > 1 else 0
        self.choices.append(i)
        return self.single.observe_hints(hints[i], validate=False)

    def _update(self, c: np.ndarray) -> None:
        self.single.observe_cost(c, validate=False)
        w = self.weights * (1.0 - self.eta * self.expert_losses(c, self._H))
        self.weights = w / w.sum()


def bad_step_set(hints, costs, alpha: float) -> np.ndarray:
    """Zero-based rounds where ``<c_t, h_t> < alpha ||c_t||^2``."""
    hints = np.asarray(hints, dtype=float)
    costs = np.asarray(costs, dtype=float)
    if hints.shape != costs.shape:
        raise ValueError(f"hint shape {hints.shape} != cost shape {costs.shape}")
    corr = np.einsum("td,td->t", costs, hints)
    return np.flatnonzero(corr < alpha * np.einsum("td,td->t", costs, costs))


def blend(hints, w) -> np.ndarray:
    """Hint sequence ``H(w)`` for a ``(T, K, d)`` hint array and fixed weights."""
    return np.einsum("tkd,k->td", np.asarray(hints, dtype=float), np.asarray(w, dtype=float))


def loss_sequence(costs, hints, alpha: float, w) -> np.ndarray:
    """Per-round smoothed hinge loss of the fixed blend ``w``."""
    costs = np.asarray(costs, dtype=float)
    a = np.einsum("td,td->t", costs, blend(hints, w))
    return smoothed_hinge(a, alpha * np.einsum("td,td->t", costs, costs))


__all__ = [
    "FtrlState",
    "KHints",
    "MWUHints",
    "bad_step_set",
    "blend",
    "entropy_regularizer",
    "ftrl_objective",
    "ftrl_simplex_update",
    "loss_sequence",
    "simplex_loss",
    "smoothed_hinge",
    "smoothed_hinge_grad",
]
