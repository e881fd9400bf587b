import math

import numpy as np
import pytest

from gcor import (
    CopulaSpec,
    blomqvist_beta,
    copula_cdf,
    empirical_cdf,
    joint_cdf,
    make_sample,
    population_qfcor,
    population_qfcov,
    qcor,
    qcov,
    qmcor,
    qmcov,
    quantile_pearson_bounds,
    sample_copula,
    tcor,
    tcov,
)

from oracles import brute_qcov, brute_tcov


class TestThreshold:
    def test_hand_value(self):
        s = make_sample([1, 2], [1, 2])
        assert tcov(s, 1, 1) == 0.25

    def test_below_range_is_zero(self):
        s = make_sample([1, 2, 3], [1, 2, 3])
        assert tcov(s, 0.5, 2) == 0.0

    def test_population_independence_is_zero(self):
        spec = CopulaSpec.independence()
        for a, b in ((0.2, 0.9), (0.5, 0.5)):
            assert copula_cdf(spec, a, b) - a * b == 0.0

    def test_tcor_perfect_cell(self):
        s = make_sample([1, 2], [1, 2])
        r = tcor(s, 1, 1)
        assert r.covariance == 0.25
        assert r.bounds.upper == 0.25
        assert r.correlation == 1.0

    def test_tcor_bounds_closed_form(self, rng):
        # craft levels u = 0.3, v = 0.6 on n = 10
        xs = np.arange(10.0)
        ys = rng.permutation(10).astype(float)
        r = tcor(make_sample(xs, ys), 2.0, np.sort(ys)[5])
        assert r.bounds.upper == pytest.approx(0.12, abs=1e-15)
        assert r.bounds.lower == pytest.approx(-0.18, abs=1e-15)

    def test_tcor_degenerate_beyond_max(self, noisy_sample):
        r = tcor(noisy_sample, noisy_sample.xs.max(), 0.0)
        assert r.degenerate and r.correlation == 0.0

    def test_matches_bruteforce(self, rng):
        for _ in range(20):
            xs = rng.integers(-2, 3, size=rng.integers(1, 12)).astype(float)
            ys = rng.integers(-2, 3, size=xs.size).astype(float)
            s = make_sample(xs, ys)
            a, b = rng.uniform(-3, 3, size=2)
            assert tcov(s, a, b) == brute_tcov(list(xs), list(ys), a, b)


class TestQuantile:
    def test_even_n_tie_free_median(self, rng):
        xs = rng.permutation(np.linspace(-1, 1, 8))
        ys = rng.permutation(np.linspace(2, 9, 8))
        s = make_sample(xs, ys)
        med_x = empirical_cdf(xs).quantile(0.5)
        med_y = empirical_cdf(ys).quantile(0.5)
        value, levels = qcov(s, 0.5, 0.5)
        assert levels.u_star == 0.5 and levels.v_star == 0.5
        assert value == joint_cdf(s, med_x, med_y) - 0.25

    def test_population_clayton_median_value(self):
        spec = CopulaSpec.clayton(2.0)
        assert population_qfcov(spec, 0.5, 0.5) == pytest.approx(7 ** (-0.5) - 0.25, abs=1e-12)
        assert population_qfcov(spec, 0.5, 0.5) == pytest.approx(0.12796, abs=5e-6)

    def test_tie_at_quantile_forces_correction(self, rng):
        xs = np.array([1.0, 1.0, 2.0, 3.0])
        ys = rng.normal(size=4)
        _, levels = qcov(make_sample(xs, ys), 0.25, 0.5)
        assert levels.u_star == 0.5

    def test_corrected_level_tie_free(self, rng):
        xs = rng.permutation(np.linspace(0, 1, 17))
        ys = rng.normal(size=17)
        s = make_sample(xs, ys)
        for alpha in (0.05, 0.33, 0.75):
            _, levels = qcov(s, alpha, 0.5)
            assert levels.u_star == math.ceil(17 * alpha) / 17

    def test_population_qfcor_clayton(self):
        assert population_qfcor(CopulaSpec.clayton(2.0), 0.5, 0.5) == pytest.approx(0.51186, abs=5e-6)

    def test_population_countermonotone_diagonal(self):
        spec = CopulaSpec.countermonotone()
        for a in (0.1, 0.3, 0.45):
            assert population_qfcor(spec, a, a) == -1.0

    def test_perfect_local_dependence_fixture(self):
        # population: unit correlation at the medians without comonotonicity
        spec = CopulaSpec.perfect_local_median()
        assert population_qfcor(spec, 0.5, 0.5) == 1.0
        s = sample_copula(spec, 200000, 99)
        assert qcor(s, 0.5, 0.5).correlation > 0.98
        from gcor import FunctionalSpec, gcor

        assert gcor(s, FunctionalSpec.mean(), FunctionalSpec.mean()).correlation < 0.6

    def test_duality_with_threshold(self, rng):
        for _ in range(15):
            xs = rng.integers(0, 5, size=rng.integers(1, 15)).astype(float)
            ys = rng.integers(0, 5, size=xs.size).astype(float)
            s = make_sample(xs, ys)
            dx, dy = empirical_cdf(xs), empirical_cdf(ys)
            for alpha, beta in ((0.2, 0.8), (0.5, 0.5), (0.9, 0.35)):
                value, _ = qcov(s, alpha, beta)
                assert value == tcov(s, dx.quantile(alpha), dy.quantile(beta))

    def test_matches_bruteforce(self, rng):
        for _ in range(15):
            xs = rng.integers(-2, 3, size=rng.integers(1, 10)).astype(float)
            ys = rng.integers(-2, 3, size=xs.size).astype(float)
            s = make_sample(xs, ys)
            for alpha, beta in ((0.25, 0.5), (0.6, 0.9)):
                assert qcov(s, alpha, beta)[0] == brute_qcov(list(xs), list(ys), alpha, beta)

    def test_rank_invariance(self, noisy_sample):
        s = noisy_sample
        base_cov = qcov(s, 0.3, 0.7)[0]
        base_cor = qcor(s, 0.3, 0.7).correlation
        for g in (np.exp, lambda v: v**3, lambda v: 3.0 * v + 1.0):
            t = make_sample(g(s.xs), s.ys)
            assert qcov(t, 0.3, 0.7)[0] == base_cov
            assert qcor(t, 0.3, 0.7).correlation == base_cor
            t2 = make_sample(s.xs, g(s.ys))
            assert qcor(t2, 0.3, 0.7).correlation == base_cor

    def test_degenerate_at_top_level(self):
        s = make_sample([1.0, 2.0], [3.0, 4.0])
        r = qcor(s, 0.9, 0.5)  # quantile lands on the maximum, u* = 1
        assert r.degenerate and r.correlation == 0.0

    def test_bounded(self, rng):
        for _ in range(10):
            xs = rng.integers(0, 4, size=20).astype(float)
            ys = rng.integers(0, 4, size=20).astype(float)
            s = make_sample(xs, ys)
            for alpha in (0.1, 0.5, 0.9):
                assert -1.0 <= qcor(s, alpha, alpha).correlation <= 1.0


class TestBlomqvist:
    def test_comonotone_even_tie_free(self, rng):
        xs = rng.permutation(np.linspace(0, 1, 12))
        s = make_sample(xs, 2 * xs + 1)
        assert blomqvist_beta(s) == 1.0

    def test_independence_population(self):
        # 4 C(1/2, 1/2) - 1 = 0 for the independence copula
        assert 4.0 * copula_cdf(CopulaSpec.independence(), 0.5, 0.5) - 1.0 == 0.0

    def test_equals_median_qcor_even_tie_free(self, rng):
        for _ in range(25):
            n = 2 * rng.integers(1, 30)
            xs = rng.permutation(np.arange(n)).astype(float)
            ys = rng.permutation(np.arange(n)).astype(float)
            s = make_sample(xs, ys)
            assert blomqvist_beta(s) == qcor(s, 0.5, 0.5).correlation


class TestQuantileMean:
    def test_constant_y_degenerate(self):
        s = make_sample([1, 2, 3, 4], [7, 7, 7, 7])
        assert qmcov(s, 0.5) == 0.0
        r = qmcor(s, 0.5)
        assert r.degenerate and r.correlation == 0.0

    def test_comonotone_tie_free(self, comonotone_sample):
        for alpha in (0.1, 0.5, 0.9):
            assert qmcor(comonotone_sample, alpha).correlation == 1.0

    def test_uses_raw_level(self, rng):
        # n = 5, alpha = 0.3: corrected level is 2/5 but the error keeps 0.3
        xs = np.array([1.0, 2.0, 3.0, 4.0, 5.0])
        ys = np.array([2.0, 1.0, 4.0, 3.0, 5.0])
        s = make_sample(xs, ys)
        y_bar = ys.mean()
        expected = math.fsum((0.3 - (xs <= 2.0)) * (ys - y_bar)) / 5
        assert qmcov(s, 0.3) == expected

    def test_expected_shortfall_closed_form(self, rng):
        # upper coupling bound equals u*(mean(y) - average of the ceil(n a) smallest y)
        for _ in range(20):
            n = int(rng.integers(2, 7))
            xs = rng.permutation(np.linspace(0, 1, n))
            ys = rng.normal(size=n)
            s = make_sample(xs, ys)
            alpha = float(rng.uniform(0.05, 0.95))
            k = math.ceil(n * alpha)
            if k == n:
                continue
            es_minus = np.sort(ys)[:k].mean()
            closed = (k / n) * (ys.mean() - es_minus)
            assert qmcor(s, alpha).bounds.upper == pytest.approx(closed, rel=1e-12, abs=1e-14)

    def test_exact_alpha_matches_spec_form(self, rng):
        # when n*alpha is an integer the bound is alpha * (mean - ES_alpha^-)
        xs = rng.permutation(np.linspace(0, 1, 8))
        ys = rng.normal(size=8)
        s = make_sample(xs, ys)
        es_minus = np.sort(ys)[:4].mean()
        closed = 0.5 * (ys.mean() - es_minus)
        assert qmcor(s, 0.5).bounds.upper == pytest.approx(closed, rel=1e-12)


class TestQuantilePearsonBounds:
    def test_symmetric_levels(self):
        lo, up = quantile_pearson_bounds(0.5, 0.5)
        assert up == 1.0 and lo == -1.0

    def test_formula(self):
        alpha, beta = 0.3, 0.6
        sd = math.sqrt(alpha * (1 - alpha) * beta * (1 - beta))
        lo, up = quantile_pearson_bounds(alpha, beta)
        assert up == pytest.approx((min(alpha, beta) - alpha * beta) / sd, abs=1e-15)
        assert lo == pytest.approx((max(alpha + beta - 1, 0.0) - alpha * beta) / sd, abs=1e-15)

    def test_attainability_structure(self):
        # 1 only on the diagonal, -1 only on the antidiagonal
        lo, up = quantile_pearson_bounds(0.2, 0.8)
        assert lo == pytest.approx(-1.0, abs=1e-12)
        assert up < 1.0 - 1e-6
        lo2, up2 = quantile_pearson_bounds(0.2, 0.2)
        assert up2 == pytest.approx(1.0, abs=1e-12)
        assert lo2 > -1.0 + 1e-6
