import itertools
import math

import numpy as np
import pytest

from olohints.adversaries import gen_complementary_pair
from olohints.core import make_rng, play
from olohints.multi_hint import (
    FtrlState,
    KHints,
    MWUHints,
    bad_step_set,
    ftrl_objective,
    ftrl_simplex_update,
    loss_sequence,
    simplex_loss,
    smoothed_hinge,
    smoothed_hinge_grad,
)
from olohints.single_hint import OneHint


def rand_unit(rng, n, d):
    z = rng.standard_normal((n, d))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


class TestSmoothedHinge:
    @pytest.mark.parametrize("a,b,expected", [(2.0, 1.0, 0.0), (0.5, 1.0, 0.25), (-1.0, 1.0, 3.0)])
    def test_branches(self, a, b, expected):
        assert smoothed_hinge(a, b) == expected

    def test_zero_b_limit(self):
        np.testing.assert_array_equal(smoothed_hinge([-1.0, 0.0, 2.0], 0.0), [2.0, 0.0, 0.0])

    def test_negative_b(self):
        with pytest.raises(ValueError):
            smoothed_hinge(0.0, -0.1)
        with pytest.raises(ValueError):
            smoothed_hinge_grad(0.0, -0.1)

    def test_continuity(self):
        b = 0.7
        for a0 in (0.0, b):
            assert smoothed_hinge(a0 - 1e-12, b) == pytest.approx(smoothed_hinge(a0 + 1e-12, b), abs=1e-10)

    @pytest.mark.parametrize("a,b,expected", [(2.0, 1.0, 0.0), (0.5, 1.0, -1.0), (-1.0, 1.0, -2.0)])
    def test_grad_branches(self, a, b, expected):
        assert smoothed_hinge_grad(a, b) == expected

    def test_grad_finite_difference(self):
        rng = make_rng(1)
        a = rng.uniform(-2, 2, 2000)
        b = rng.uniform(0.05, 1, 2000)
        eps = 1e-6
        fd = (smoothed_hinge(a + eps, b) - smoothed_hinge(a - eps, b)) / (2 * eps)
        np.testing.assert_allclose(smoothed_hinge_grad(a, b), fd, atol=1e-6)

    def test_grad_bounds(self):
        rng = make_rng(2)
        a = rng.uniform(-2, 2, 5000)
        b = rng.uniform(0.01, 1, 5000)
        g = smoothed_hinge_grad(a, b)
        assert np.all(np.abs(g) <= 2)
        assert np.all(g ** 2 <= 4 / b * smoothed_hinge(a, b) + 1e-12)


class TestSimplexLoss:
    def test_zero_cost(self):
        v, g = simplex_loss([0.5, 0.5], np.zeros(2), np.eye(2), 0.3)
        assert v == 0.0
        np.testing.assert_array_equal(g, 0.0)

    def test_good_blend_is_free(self):
        c = np.array([1.0, 0.0])
        H = np.array([[1.0, 0.0], [0.0, 1.0]])
        v, g = simplex_loss([0.6, 0.4], c, H, 0.5)
        assert v == 0.0
        np.testing.assert_array_equal(g, 0.0)

    def test_gradient_finite_difference(self):
        rng = make_rng(3)
        for _ in range(100):
            H = rand_unit(rng, 3, 2)
            c = rand_unit(rng, 1, 2)[0] * rng.uniform(0.2, 1)
            w = rng.dirichlet(np.ones(3))
            alpha = rng.uniform(0.05, 0.9)
            _, g = simplex_loss(w, c, H, alpha)
            eps = 1e-6
            fd = np.array([(simplex_loss(w + eps * e, c, H, alpha)[0] - simplex_loss(w - eps * e, c, H, alpha)[0])
                           / (2 * eps) for e in np.eye(3)])
            np.testing.assert_allclose(g, fd, atol=1e-6)


class TestFtrl:
    def test_uniform_start(self):
        np.testing.assert_allclose(ftrl_simplex_update(FtrlState(4)), 0.25, atol=1e-15)

    def test_dominance(self):
        st = FtrlState(2)
        st.grad_sum[:] = [0.0, 1e6]
        w = ftrl_simplex_update(st)
        assert w[0] == pytest.approx(1.0, abs=1e-9)
        assert w[1] > 0

    def test_needs_two_entries(self):
        with pytest.raises(ValueError):
            FtrlState(1)

    def test_grid_oracle(self):
        # brute force over a 200 x 200 barycentric grid
        rng = make_rng(4)
        n = 200
        i, j = np.meshgrid(np.arange(n + 1), np.arange(n + 1), indexing="ij")
        keep = i + j <= n
        W = np.column_stack([i[keep], j[keep], n - i[keep] - j[keep]]) / n
        for _ in range(20):
            st = FtrlState(3)
            st.grad_sum[:] = rng.normal(0, 3, 3)
            st.sq_inf_sum = rng.uniform(0, 20)
            w = ftrl_simplex_update(st)
            vals = W @ st.grad_sum
            eta = math.sqrt((math.log(3) + st.sq_inf_sum) / math.log(3))
            with np.errstate(divide="ignore", invalid="ignore"):
                ent = np.where(W > 0, W * np.log(W), 0.0).sum(axis=1)
            grid_best = float(np.min(vals + eta * (math.log(3) + ent)))
            ours = ftrl_objective(w, st.grad_sum, st.sq_inf_sum)
            assert ours <= grid_best + 1e-12
            assert grid_best - ours <= 1e-3


class TestKHints:
    def test_single_sequence_matches_one_hint(self):
        rng = make_rng(5)
        T = 200
        c = rand_unit(rng, T, 3)
        h = rand_unit(rng, T, 3)
        a = play(KHints(0.4, T, 3, 1), c, h[:, None, :])
        b = play(OneHint(0.2, T, 3), c, h)
        np.testing.assert_array_equal(a, b)

    def test_zero_hints(self):
        rng = make_rng(6)
        T = 100
        c = rand_unit(rng, T, 3)
        a = play(KHints(0.4, T, 3, 3), c, np.zeros((T, 3, 3)))
        b = play(OneHint(0.2, T, 3), c, np.zeros((T, 3)))
        np.testing.assert_array_equal(a, b)

    def test_complementary_pair(self):
        T = 512
        sc = gen_complementary_pair(T, 3, seed=1)
        lr = KHints(0.25, T, 3, 2)
        xs = play(lr, sc.costs, sc.hints)
        assert np.all(np.linalg.norm(xs, axis=1) <= 1 + 1e-9)
        logT, logK = math.log(T), math.log(2)
        assert lr.ledger.worst_case_regret() <= (logT + math.sqrt(logT * logK)) / 0.25
        assert np.all(lr.w > 0) and lr.w.sum() == pytest.approx(1.0, abs=1e-12)

    def test_wrong_hint_count(self):
        lr = KHints(0.3, 10, 2, 2)
        with pytest.raises(ValueError):
            lr.observe_hints(np.zeros((3, 2)))


class TestMWU:
    def test_identical_sequences_stay_uniform(self):
        rng = make_rng(7)
        T = 100
        c = rand_unit(rng, T, 3)
        h = rand_unit(rng, T, 3)
        lr = MWUHints(0.3, T, 3, 3, seed=1)
        xs = play(lr, c, np.repeat(h[:, None, :], 3, axis=1))
        np.testing.assert_allclose(lr.weights, 1 / 3, atol=1e-15)
        np.testing.assert_array_equal(xs, play(OneHint(0.3, T, 3), c, h))

    def test_weight_update_arithmetic(self):
        lr = MWUHints(0.5, 10, 2, 2, seed=0)
        lr.observe_hints(np.array([[-1.0, 0.0], [1.0, 0.0]]))
        lr.observe_cost([1.0, 0.0])
        np.testing.assert_allclose(lr.weights, [1 / 3, 2 / 3], atol=1e-15)

    def test_prefers_good_sequence(self):
        # one sequence always good, the rest always bad; Monte-Carlo over seeds
        T, K, alpha, seeds = 512, 4, 0.5, 200
        rng = make_rng(8)
        c = rand_unit(rng, T, 3)
        H = np.repeat(-c[:, None, :], K, axis=1)
        H[:, 0] = c
        fracs = []
        for s in range(seeds):
            lr = MWUHints(alpha, T, 3, K, seed=s)
            play(lr, c, H)
            fracs.append(np.mean(np.array(lr.choices) != 0))
        fracs = np.array(fracs)
        target = 2 * math.log(K) / T
        slack = 3 * fracs.std(ddof=1) / math.sqrt(seeds)
        assert fracs.mean() <= target + slack

    def test_loss_rules(self):
        lr_s = MWUHints(0.5, 10, 2, 2, loss_rule="signed")
        lr_a = MWUHints(0.5, 10, 2, 2, loss_rule="absolute")
        c = np.array([1.0, 0.0])
        H = np.array([[-1.0, 0.0], [0.4, 0.0]])
        np.testing.assert_array_equal(lr_s.expert_losses(c, H), [1.0, 1.0])
        np.testing.assert_array_equal(lr_a.expert_losses(c, H), [0.0, 1.0])
        with pytest.raises(ValueError):
            MWUHints(0.5, 10, 2, 2, loss_rule="other")

    def test_reset_replays_randomness(self):
        rng = make_rng(9)
        c = rand_unit(rng, 50, 2)
        H = rand_unit(rng, 100, 2).reshape(50, 2, 2)
        lr = MWUHints(0.3, 50, 2, 2, seed=4)
        a = play(lr, c, H)
        lr.reset()
        np.testing.assert_array_equal(a, play(lr, c, H))


class TestBadSteps:
    def test_identity_hints(self):
        c = rand_unit(make_rng(10), 20, 3)
        assert bad_step_set(c, c, 0.5).size == 0
        np.testing.assert_array_equal(bad_step_set(-c, c, 0.5), np.arange(20))

    def test_zero_cost_never_bad(self):
        assert bad_step_set(np.ones((3, 2)) / 2, np.zeros((3, 2)), 0.5).size == 0

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            bad_step_set(np.zeros((3, 2)), np.zeros((4, 2)), 0.5)

    def test_monotone_in_alpha(self):
        rng = make_rng(11)
        c, h = rand_unit(rng, 300, 3), rand_unit(rng, 300, 3)
        for a1, a2 in itertools.combinations(sorted(rng.uniform(0, 1, 6)), 2):
            assert set(bad_step_set(h, c, a1)) <= set(bad_step_set(h, c, a2))

    def test_loss_sequence_matches_pointwise(self):
        sc = gen_complementary_pair(10, 3, seed=0)
        seq = loss_sequence(sc.costs, sc.hints, 0.25, [0.5, 0.5])
        assert np.all(seq == 0.0)
