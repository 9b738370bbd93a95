import math

import numpy as np
import pytest

from olohints.adversaries import (
    ScenarioSpec,
    export_table,
    gen_alpha_lower,
    gen_complementary_pair,
    gen_correlated,
    gen_logK_lower,
    gen_random_signs,
    generate,
    import_table,
    validate,
)
from olohints.multi_hint import bad_step_set


class TestCorrelated:
    def test_exact_correlation_boundary(self):
        sc = gen_correlated(ScenarioSpec(T=200, d=3, alpha=0.3, seed=1))
        h = sc.hints[:, 0]
        assert bad_step_set(h, sc.costs, 0.3).size == 0
        np.testing.assert_array_equal(bad_step_set(h, sc.costs, 0.3 + 1e-6), np.arange(200))

    def test_all_bad(self):
        sc = gen_correlated(ScenarioSpec(T=50, d=3, alpha=0.3, bad_set=tuple(range(50)), seed=1))
        np.testing.assert_array_equal(bad_step_set(sc.hints[:, 0], sc.costs, 0.3), np.arange(50))

    def test_two_dim_arithmetic(self):
        found = False
        sc = gen_correlated(ScenarioSpec(T=400, d=2, alpha=0.6, seed=2))
        for c, h in zip(sc.costs, sc.hints[:, 0]):
            assert float(h @ c) == pytest.approx(0.6, abs=1e-14)
            assert np.linalg.norm(h) == pytest.approx(1.0, abs=1e-14)
            # rotate into the frame where c = e1: h is (0.6, +-0.8)
            rot = np.array([[c[0], c[1]], [-c[1], c[0]]])
            hr = rot @ h
            np.testing.assert_allclose([hr[0], abs(hr[1])], [0.6, 0.8], atol=1e-14)
            found = True
        assert found

    def test_one_dim(self):
        sc = gen_correlated(ScenarioSpec(T=20, d=1, alpha=0.4, seed=3))
        np.testing.assert_allclose(sc.hints[:, 0], 0.4 * sc.costs, atol=0)

    def test_bad_fraction_and_k(self):
        sc = gen_correlated(ScenarioSpec(T=100, d=3, K=3, alpha=0.2, bad_fraction=0.25, seed=4))
        assert sc.hints.shape == (100, 3, 3) and sc.info["bad_rounds"].size == 25
        for k in range(3):
            np.testing.assert_array_equal(bad_step_set(sc.hints[:, k], sc.costs, 0.2), sc.info["bad_rounds"])
        validate(sc.costs, sc.hints)

    def test_errors(self):
        with pytest.raises(ValueError):
            gen_correlated(ScenarioSpec(alpha=1.0))
        with pytest.raises(ValueError):
            gen_correlated(ScenarioSpec(T=5, bad_set=(7,)))
        with pytest.raises(ValueError):
            ScenarioSpec(kind="nope")

    def test_deterministic(self):
        spec = ScenarioSpec(T=64, d=3, K=2, alpha=0.4, bad_fraction=0.5, seed=9, drift=0.3)
        a, b = gen_correlated(spec), gen_correlated(spec)
        np.testing.assert_array_equal(a.costs, b.costs)
        np.testing.assert_array_equal(a.hints, b.hints)


class TestLogKLower:
    def test_smallest_case(self):
        sc = gen_logK_lower(4, 0.25, seed=0)
        assert sc.K == 8 and sc.costs.shape == (4, 1)
        # group i covers round i and enumerates both signs
        for i in range(4):
            block = sc.hints[i, 2 * i:2 * i + 2, 0]
            assert sorted(block) == [-1.0, 1.0]
            others = np.delete(sc.hints[:, 2 * i:2 * i + 2, 0], i, axis=0)
            np.testing.assert_array_equal(others, 0.0)

    def test_construction_arithmetic(self):
        sc = gen_logK_lower(8, 0.25, seed=1)
        assert sc.K == 8 * 2 ** 2 // 2 == 16
        assert sc.witness.sum() == pytest.approx(1.0, abs=1e-15)
        assert np.all(sc.witness >= 0)

    def test_witness_correlation_exact(self):
        for T, alpha in ((8, 0.25), (12, 0.25), (16, 0.125)):
            sc = gen_logK_lower(T, alpha, seed=T)
            blend = np.einsum("k,tkd->td", sc.witness, sc.hints)
            corr = np.einsum("td,td->t", blend, sc.costs)
            np.testing.assert_array_equal(corr, alpha)
            validate(sc.costs, sc.hints)

    def test_divisibility(self):
        with pytest.raises(ValueError):
            gen_logK_lower(10, 0.25)
        with pytest.raises(ValueError):
            gen_logK_lower(12, 0.3)


class TestAlphaLower:
    def test_costs(self):
        sc = gen_alpha_lower(100, 0.6, seed=1)
        assert {tuple(np.round(c, 12)) for c in sc.costs} <= {(0.6, 0.8), (0.6, -0.8)}
        np.testing.assert_allclose(np.linalg.norm(sc.costs, axis=1), 1.0, atol=1e-15)
        corr = np.einsum("td,td->t", sc.hints[:, 0], sc.costs)
        np.testing.assert_array_equal(corr, 0.6)

    def test_comparator_reward_monte_carlo(self):
        T, alpha = 4096, 0.1
        norms = [np.linalg.norm(gen_alpha_lower(T, alpha, seed=s).costs.sum(axis=0)) for s in range(200)]
        target = math.sqrt(alpha ** 2 * T ** 2 + T * (1 - alpha ** 2))
        assert abs(np.mean(norms) / target - 1) <= 0.05


class TestComplementaryPair:
    def test_bad_sets(self):
        T = 64
        sc = gen_complementary_pair(T, 3, seed=1)
        for k in range(2):
            assert bad_step_set(sc.hints[:, k], sc.costs, 0.25).size == T // 2
        blend = sc.hints.mean(axis=1)
        assert bad_step_set(blend, sc.costs, 0.25).size == 0
        np.testing.assert_allclose(np.einsum("td,td->t", blend, sc.costs), 3 / 8, atol=1e-15)
        validate(sc.costs, sc.hints)

    def test_inner_products(self):
        sc = gen_complementary_pair(6, 4, seed=2)
        ip = np.einsum("tkd,td->tk", sc.hints, sc.costs)
        np.testing.assert_allclose(ip[:, 0], [-0.25, 1, -0.25, 1, -0.25, 1], atol=1e-15)
        np.testing.assert_allclose(ip[:, 1], [1, -0.25, 1, -0.25, 1, -0.25], atol=1e-15)

    def test_minimal(self):
        sc = gen_complementary_pair(2, 3, seed=0)
        np.testing.assert_array_equal(bad_step_set(sc.hints[:, 0], sc.costs, 0.25), [0])
        np.testing.assert_array_equal(bad_step_set(sc.hints[:, 1], sc.costs, 0.25), [1])

    def test_drift(self):
        sc = gen_complementary_pair(40, 4, seed=3, drift=0.5)
        validate(sc.costs, sc.hints)
        assert np.all(sc.costs[:, 1] > 0)
        assert bad_step_set(sc.hints.mean(axis=1), sc.costs, 0.25).size == 0

    def test_errors(self):
        with pytest.raises(ValueError):
            gen_complementary_pair(5, 3)
        with pytest.raises(ValueError):
            gen_complementary_pair(4, 2)
        with pytest.raises(ValueError):
            gen_complementary_pair(4, 3, drift=0.5)


class TestRandomSigns:
    def test_mean_and_norm(self):
        T = 10_000
        c = gen_random_signs(T, 3, seed=4)
        assert np.all(np.abs(c.mean(axis=0)) <= 4 / math.sqrt(T))
        np.testing.assert_array_equal(np.linalg.norm(c, axis=1), 1.0)

    def test_deterministic(self):
        np.testing.assert_array_equal(gen_random_signs(50, 2, seed=5), gen_random_signs(50, 2, seed=5))
        assert not np.array_equal(gen_random_signs(50, 2, seed=5), gen_random_signs(50, 2, seed=6))

    def test_opposite_hints(self):
        sc = generate(ScenarioSpec(kind="random-signs", T=30, d=2, K=2, seed=1))
        np.testing.assert_array_equal(sc.hints[:, 0], np.tile([1.0, 0.0], (30, 1)))
        np.testing.assert_array_equal(sc.hints[:, 1], -sc.hints[:, 0])


class TestTable:
    @pytest.mark.parametrize("kind", ["correlated", "complementary-pair", "alpha-lower"])
    def test_round_trip(self, tmp_path, kind):
        sc = generate(ScenarioSpec(kind=kind, T=32, d=3, K=2, alpha=0.3, bad_fraction=0.2, seed=7))
        path = tmp_path / "seq.csv"
        export_table(path, sc.costs, sc.hints)
        costs, hints = import_table(path)
        np.testing.assert_array_equal(costs, sc.costs)
        np.testing.assert_array_equal(hints, sc.hints)

    def test_header(self, tmp_path):
        sc = gen_complementary_pair(4, 3)
        path = tmp_path / "seq.csv"
        export_table(path, sc.costs, sc.hints)
        assert path.read_text().splitlines()[0] == "t,c0,c1,c2,h0_0,h0_1,h0_2,h1_0,h1_1,h1_2"
