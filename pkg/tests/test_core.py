import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from olohints.core import (
    NORM_TOL,
    Learner,
    RegretLedger,
    check_hint_matrix,
    check_unit,
    make_rng,
    play,
    project_to_ball,
    regret_vs_comparator,
    worst_case_regret,
)


def unit_ball_samples(rng, n, d):
    z = rng.standard_normal((n, d))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    return z * rng.uniform(0, 1, (n, 1)) ** (1 / d)


class TestProjectToBall:
    def test_inside_untouched(self):
        np.testing.assert_array_equal(project_to_ball([0.3, 0.4]), [0.3, 0.4])

    def test_scaled_onto_sphere(self):
        np.testing.assert_allclose(project_to_ball([3.0, 4.0]), [0.6, 0.8], rtol=0, atol=1e-15)

    def test_zero(self):
        np.testing.assert_array_equal(project_to_ball(np.zeros(3)), np.zeros(3))

    @pytest.mark.parametrize("bad", [[np.nan, 0.0], [np.inf, 1.0]])
    def test_non_finite_rejected(self, bad):
        with pytest.raises(ValueError):
            project_to_ball(bad)

    @settings(max_examples=200, deadline=None)
    @given(arrays(np.float64, 5, elements=st.floats(-1e3, 1e3)),
           arrays(np.float64, 5, elements=st.floats(-1e3, 1e3)))
    def test_idempotent_and_nonexpansive(self, x, y):
        px, py = project_to_ball(x), project_to_ball(y)
        assert np.linalg.norm(px) <= 1.0
        np.testing.assert_array_equal(project_to_ball(px), px)
        assert np.linalg.norm(px - py) <= np.linalg.norm(x - y) + 1e-12


class TestValidation:
    def test_within_tolerance_renormalized(self):
        v = check_unit(np.array([1.0 + NORM_TOL / 2, 0.0]))
        assert np.linalg.norm(v) <= 1.0

    def test_beyond_tolerance_rejected(self):
        with pytest.raises(ValueError, match="norm"):
            check_unit(np.array([1.0 + 1e-6, 0.0]))

    def test_hint_matrix_shape(self):
        H = check_hint_matrix(np.array([0.6, 0.8]), 2)
        assert H.shape == (1, 2)
        with pytest.raises(ValueError):
            check_hint_matrix(np.zeros((2, 3)), 2)
        with pytest.raises(ValueError):
            check_hint_matrix(np.array([[2.0, 0.0]]), 2)


class TestRegretLedger:
    def test_zero_decisions(self):
        led = RegretLedger(2).extend(np.zeros((2, 2)), [[1, 0], [0, 1]])
        assert worst_case_regret(led) == pytest.approx(math.sqrt(2), abs=1e-15)

    def test_single_round(self):
        led = RegretLedger(2)
        led.update(np.array([1.0, 0.0]), np.array([1.0, 0.0]))
        assert led.worst_case_regret() == 2.0

    def test_matches_sampled_comparators(self):
        # sampling oracle: the sup over the ball is approached from below
        rng = make_rng(11)
        led = RegretLedger(2).extend(unit_ball_samples(rng, 5, 2), unit_ball_samples(rng, 5, 2))
        theta = np.linspace(0, 2 * np.pi, 10_000, endpoint=False)
        us = np.column_stack([np.cos(theta), np.sin(theta)])
        best = max(led.regret_vs(u) for u in us)
        assert best <= led.worst_case_regret() + 1e-12
        assert led.worst_case_regret() - best <= 1e-6

    def test_comparator_forms(self):
        rng = make_rng(12)
        xs, cs = unit_ball_samples(rng, 20, 3), unit_ball_samples(rng, 20, 3)
        led = RegretLedger(3).extend(xs, cs)
        assert regret_vs_comparator(led, np.zeros(3)) == led.cumulative_cost
        g = led.cost_sum
        assert led.regret_vs(-g / np.linalg.norm(g)) == pytest.approx(led.worst_case_regret(), abs=1e-12)
        u = rng.normal(size=3) * 5
        direct = sum(float(c @ (x - u)) for x, c in zip(xs, cs))
        assert led.regret_vs(u) == pytest.approx(direct, abs=1e-9)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            RegretLedger(3).regret_vs(np.zeros(2))

    def test_worst_case_dominates(self):
        rng = make_rng(13)
        led = RegretLedger(4).extend(unit_ball_samples(rng, 30, 4), unit_ball_samples(rng, 30, 4))
        us = unit_ball_samples(rng, 1000, 4)
        assert all(led.regret_vs(u) <= led.worst_case_regret() + 1e-12 for u in us)

    def test_associative(self):
        rng = make_rng(14)
        xs, cs = unit_ball_samples(rng, 3, 2), unit_ball_samples(rng, 3, 2)
        ab_c = RegretLedger(2).extend(xs[:2], cs[:2]).merged(RegretLedger(2).extend(xs[2:], cs[2:]))
        a_bc = RegretLedger(2).extend(xs[:1], cs[:1]).merged(RegretLedger(2).extend(xs[1:], cs[1:]))
        assert ab_c.rounds == a_bc.rounds == 3
        assert ab_c.cumulative_cost == pytest.approx(a_bc.cumulative_cost, abs=1e-15)
        np.testing.assert_allclose(ab_c.cost_sum, a_bc.cost_sum, atol=1e-15)


class _Echo(Learner):
    uses_hints = True

    def _reset(self):
        pass

    def _predict(self, hints):
        return np.full(self.dim, 2.0) if hints is None else hints[0]

    def _update(self, c):
        pass


class TestProtocol:
    def test_alternation_enforced(self):
        lr = _Echo(2)
        with pytest.raises(RuntimeError):
            lr.observe_cost([0.0, 0.0])
        lr.observe_hints([[0.6, 0.8]])
        with pytest.raises(RuntimeError):
            lr.observe_hints([[0.6, 0.8]])

    def test_ball_enforced_in_constrained_mode(self):
        with pytest.raises(AssertionError):
            _Echo(2).observe_hints(None)

    def test_reset_clears_ledger(self):
        lr = _Echo(2)
        play(lr, [[0.1, 0.0]], np.array([[[0.6, 0.8]]]))
        assert lr.ledger.rounds == 1
        lr.reset()
        assert lr.ledger.rounds == 0


class TestRng:
    def test_streams_reproducible_and_distinct(self):
        a = make_rng(5, 1, 2).standard_normal(4)
        b = make_rng(5, 1, 2).standard_normal(4)
        c = make_rng(5, 1, 3).standard_normal(4)
        np.testing.assert_array_equal(a, b)
        assert not np.array_equal(a, c)
        assert isinstance(make_rng(0).bit_generator, np.random.Philox)
