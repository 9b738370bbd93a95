"""Analytic regret bounds, evaluated on concrete cost/hint data.

Bounds are addressed by id.  Where a guarantee is only known up to a
constant, the bracketed expression is reported with constant 1 and the
caller supplies the empirical multiplier.  ``log`` is natural; horizons
``T <= 1`` contribute ``log T = 0`` so that an empty sequence is legal.
"""

from __future__ import annotations

import math

import numpy as np

from ..combiners import alpha_grid

BOUND_IDS = (
    "one-hint",
    "k-hints",
    "mwu",
    "combiner-det",
    "combiner-rand",
    "unknown-alpha",
    "unconstrained",
    "selfbounding",
)


def log_horizon(T: float) -> float:
    return math.log(T) if T > 1 else 0.0


def _as_hint_array(hints, T: int) -> np.ndarray:
    hints = np.asarray(hints, dtype=float)
    if hints.ndim == 2:
        hints = hints[:, None, :]
    if hints.ndim != 3 or hints.shape[0] != T:
        raise ValueError(f"hints must be (T, d) or (T, K, d) with T = {T}, got {hints.shape}")
    return hints


def hint_stats(costs, hints, alpha: float) -> dict:
    """Data terms of the single-hint bound for one ``(T, d)`` hint sequence."""
    costs = np.asarray(costs, dtype=float)
    hints = np.asarray(hints, dtype=float)
    corr = np.einsum("td,td->t", costs, hints)
    sq = np.einsum("td,td->t", costs, costs)
    bad = corr < alpha * sq
    return {
        "bad_sq_sum": float(np.sum(sq[bad])),
        "bad_count": int(np.count_nonzero(bad)),
        "neg_sum": float(np.sum(np.maximum(0.0, -corr))),
    }


def one_hint_bound(alpha: float, horizon: float, bad_sq_sum: float = 0.0, neg_sum: float = 0.0) -> float:
    """Explicit single-hint guarantee (printed constants)."""
    L = log_horizon(horizon)
    return 0.5 + 4.0 * (math.sqrt(bad_sq_sum) + L / alpha + 2.0 * math.sqrt(L * neg_sum / alpha))


def k_hints_bracket(alpha: float, horizon: float, K: int, bad_sq_sum: float = 0.0, neg_sum: float = 0.0) -> float:
    """K-hint guarantee for one blend, constant 1."""
    L = log_horizon(horizon)
    logK = math.log(K) if K > 1 else 0.0
    return (math.sqrt(L * bad_sq_sum) + math.sqrt(L * neg_sum / alpha)
            + (L + math.sqrt(L * logK)) / alpha)


def _candidate_blends(K: int, w) -> list[np.ndarray]:
    if w is not None:
        w = np.asarray(w, dtype=float)
        if w.shape != (K,) or np.any(w < -1e-12) or abs(w.sum() - 1.0) > 1e-9:
            raise ValueError("w must be a point of the simplex with K entries")
        return [w]
    # without an explicit blend: the vertices and the barycenter
    return [np.eye(K)[i] for i in range(K)] + ([np.full(K, 1.0 / K)] if K > 1 else [])


def _min_over_blends(costs, hints, alpha, w, fn) -> float:
    best = math.inf
    for v in _candidate_blends(hints.shape[1], w):
        st = hint_stats(costs, np.einsum("tkd,k->td", hints, v), alpha)
        best = min(best, fn(st))
    return best


def k_hints_bound(costs, hints, alpha: float, horizon: float | None = None, w=None) -> float:
    costs = np.asarray(costs, dtype=float)
    T = costs.shape[0]
    hints = _as_hint_array(hints, T)
    horizon = T if horizon is None else horizon
    K = hints.shape[1]
    return _min_over_blends(costs, hints, alpha, w,
                            lambda st: k_hints_bracket(alpha, horizon, K, st["bad_sq_sum"], st["neg_sum"]))


def mwu_bound(costs, hints, alpha: float, horizon: float | None = None) -> float:
    """Guarantee for sampling the best single sequence, constant 1."""
    costs = np.asarray(costs, dtype=float)
    T = costs.shape[0]
    hints = _as_hint_array(hints, T)
    horizon = T if horizon is None else horizon
    L = log_horizon(horizon)
    K = hints.shape[1]
    logK = math.log(K) if K > 1 else 0.0
    best = min(hint_stats(costs, hints[:, i], alpha)["bad_count"] for i in range(K)) if T else 0
    return math.sqrt(L * (best + logK) / alpha) + L / alpha


def combiner_det_bound(K: int, min_bound: float) -> float:
    """Worst-case guarantee of the cycling combiner, in half-scaled units."""
    return K * (4.0 + 4.0 * min_bound)


def combiner_rand_bound(K: int, min_bound: float) -> float:
    """Expected guarantee of the randomized combiner (oblivious costs), half-scaled units."""
    return math.log2(K + 1) * (4.0 + 4.0 * min_bound)


def loglog_factor(horizon: float) -> float:
    L = log_horizon(horizon)
    return max(1.0, math.log(L)) if L > 0 else 1.0


def unknown_alpha_bound(costs, hints, horizon: float | None = None, w=None) -> float:
    """``log log T`` times the best K-hint bracket over the dyadic alpha grid, constant 1."""
    costs = np.asarray(costs, dtype=float)
    T = costs.shape[0]
    horizon = T if horizon is None else horizon
    best = min(k_hints_bound(costs, hints, a, horizon, w) for a in alpha_grid(max(horizon, 2)))
    return loglog_factor(horizon) * best


def unconstrained_bound(costs, hints, alpha: float, u_norm: float = 1.0,
                        horizon: float | None = None, w=None) -> float:
    """``||u|| log T (sqrt(log K)/alpha + sqrt(|B|/alpha))``, constant 1."""
    costs = np.asarray(costs, dtype=float)
    T = costs.shape[0]
    hints = _as_hint_array(hints, T)
    horizon = T if horizon is None else horizon
    L = log_horizon(horizon)
    K = hints.shape[1]
    logK = math.log(K) if K > 1 else 0.0
    return _min_over_blends(
        costs, hints, alpha, w,
        lambda st: u_norm * L * (math.sqrt(logK) / alpha + math.sqrt(st["bad_count"] / alpha)))


def selfbounding_bound(K: int, alpha: float, min_loss: float) -> float:
    """Self-bounding guarantee on the simplex learner's cumulative smoothed hinge loss."""
    logK = math.log(K) if K > 1 else 0.0
    return 22.0 * logK / alpha + 2.0 * min_loss


def evaluate_bound(bound_id: str, costs=None, hints=None, **params) -> float:
    """Evaluate bound ``bound_id``.

    Data-driven ids take ``costs`` (``(T, d)``) and ``hints`` (``(T, d)`` or
    ``(T, K, d)``).  ``one-hint`` also accepts its summary terms directly:
    ``alpha``, ``horizon``, ``bad_sq_sum``, ``neg_sum``.
    """
    if bound_id == "one-hint":
        alpha = params["alpha"]
        if costs is not None:
            costs = np.asarray(costs, dtype=float)
            h = _as_hint_array(hints, costs.shape[0])
            if h.shape[1] != 1:
                raise ValueError("one-hint bound takes a single hint sequence")
            stats = hint_stats(costs, h[:, 0], alpha)
            params.setdefault("horizon", costs.shape[0])
            params.setdefault("bad_sq_sum", stats["bad_sq_sum"])
            params.setdefault("neg_sum", stats["neg_sum"])
        return one_hint_bound(alpha, params.get("horizon", 0), params.get("bad_sq_sum", 0.0),
                              params.get("neg_sum", 0.0))
    if bound_id == "k-hints":
        return k_hints_bound(costs, hints, params["alpha"], params.get("horizon"), params.get("w"))
    if bound_id == "mwu":
        return mwu_bound(costs, hints, params["alpha"], params.get("horizon"))
    if bound_id == "combiner-det":
        return combiner_det_bound(params["K"], params["min_bound"])
    if bound_id == "combiner-rand":
        return combiner_rand_bound(params["K"], params["min_bound"])
    if bound_id == "unknown-alpha":
        return unknown_alpha_bound(costs, hints, params.get("horizon"), params.get("w"))
    if bound_id == "unconstrained":
        return unconstrained_bound(costs, hints, params["alpha"], params.get("u_norm", 1.0),
                                   params.get("horizon"), params.get("w"))
    if bound_id == "selfbounding":
        return selfbounding_bound(params["K"], params["alpha"], params["min_loss"])
    raise ValueError(f"unknown bound id {bound_id!r}; valid: {', '.join(BOUND_IDS)}")
