import numpy as np
import pytest

from gcor import (
    FunctionalSpec,
    LengthMismatch,
    coupling_bounds,
    empirical_cdf,
    error_series,
    gcor,
    gcor_from_errors,
    gcov,
    make_sample,
    sample_copula,
    CopulaSpec,
)

from oracles import brute_coupling, brute_gcov, brute_mean_errors

MEAN = FunctionalSpec.mean()

ALL_SPECS = [
    FunctionalSpec.mean(),
    FunctionalSpec.expectile(0.3),
    FunctionalSpec.expectile(0.8),
    FunctionalSpec.quantile(0.25),
    FunctionalSpec.quantile(0.5),
    FunctionalSpec.threshold(0.0),
]


def mean_errors(values):
    values = np.asarray(values, dtype=float)
    return error_series(MEAN, values, empirical_cdf(values))


class TestGcov:
    def test_countermonotone_hand_value(self):
        ex = mean_errors([1, 2, 3])
        ey = mean_errors([3, 2, 1])
        assert gcov(ex, ey) == pytest.approx(-2.0 / 3.0, abs=1e-15)

    def test_comonotone_hand_value(self):
        ex = mean_errors([1, 2, 3])
        assert gcov(ex, ex) == pytest.approx(2.0 / 3.0, abs=1e-15)

    def test_zero_series(self):
        ex = mean_errors([1, 2, 3])
        ez = mean_errors([5, 5, 5])
        assert gcov(ex, ez) == 0.0

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            gcov(mean_errors([1, 2]), mean_errors([1, 2, 3]))

    def test_matches_bruteforce(self, rng):
        for _ in range(15):
            xs = rng.normal(size=rng.integers(2, 30))
            ys = rng.normal(size=xs.size)
            ex, ey = mean_errors(xs), mean_errors(ys)
            assert gcov(ex, ey) == brute_gcov(brute_mean_errors(list(xs)), brute_mean_errors(list(ys)))


class TestCouplingBounds:
    def test_hand_values(self):
        ex = mean_errors([1, 2, 3])
        ey = mean_errors([3, 2, 1])
        b = coupling_bounds(ex, ey)
        assert b.lower == pytest.approx(-2.0 / 3.0, abs=1e-15)
        assert b.upper == pytest.approx(2.0 / 3.0, abs=1e-15)

    def test_constant_series_gives_zero_bounds(self):
        ex = mean_errors([1, 2, 3])
        ez = mean_errors([4, 4, 4])
        b = coupling_bounds(ex, ez)
        assert b.lower == 0.0 and b.upper == 0.0

    def test_median_errors_quarter_bounds(self, rng):
        # tie-free even n: median quantile errors are balanced +-1/2
        values = rng.permutation(np.linspace(-2, 2, 10))
        es = error_series(FunctionalSpec.quantile(0.5), values, empirical_cdf(values))
        flipped = error_series(FunctionalSpec.quantile(0.5), -values, empirical_cdf(-values))
        b = coupling_bounds(es, flipped)
        assert b.upper == 0.25
        assert b.lower == -0.25

    def test_matches_bruteforce(self, rng):
        xs = rng.normal(size=21)
        ys = rng.normal(size=21)
        b = coupling_bounds(mean_errors(xs), mean_errors(ys))
        lo, up = brute_coupling(brute_mean_errors(list(xs)), brute_mean_errors(list(ys)))
        assert b.lower == lo and b.upper == up

    def test_sandwich_on_random_samples(self, rng):
        for spec_x in ALL_SPECS:
            for _ in range(5):
                xs = rng.integers(-3, 4, size=25).astype(float)
                ys = rng.integers(-3, 4, size=25).astype(float)
                ex = error_series(spec_x, xs, empirical_cdf(xs))
                ey = mean_errors(ys)
                b = coupling_bounds(ex, ey)
                assert b.lower <= gcov(ex, ey) <= b.upper
                assert b.lower <= 0.0 <= b.upper


class TestGcor:
    def test_countermonotone_is_minus_one(self):
        s = make_sample([1, 2, 3], [3, 2, 1])
        assert gcor(s, MEAN, MEAN).correlation == -1.0

    def test_comonotone_is_one(self):
        s = make_sample([1, 2, 3], [1, 2, 3])
        assert gcor(s, MEAN, MEAN).correlation == 1.0

    def test_constant_margin_is_degenerate_zero(self):
        s = make_sample([1, 2, 3], [5, 5, 5])
        for spec in ALL_SPECS:
            r = gcor(s, MEAN, spec)
            r2 = gcor(s.swapped(), spec, MEAN)
            assert (r.correlation, r.degenerate) == (0.0, True)
            assert (r2.correlation, r2.degenerate) == (0.0, True)

    def test_threshold_outside_range_degenerate(self, noisy_sample):
        r = gcor(noisy_sample, FunctionalSpec.threshold(1e9), MEAN)
        assert r.degenerate and r.correlation == 0.0

    def test_normalisation_bounded(self, rng):
        for _ in range(10):
            xs = rng.integers(-2, 3, size=30).astype(float)
            ys = rng.integers(-2, 3, size=30).astype(float)
            s = make_sample(xs, ys)
            for spec_x in ALL_SPECS:
                r = gcor(s, spec_x, MEAN)
                assert -1.0 <= r.correlation <= 1.0

    def test_symmetry(self, noisy_sample, rng):
        for spec_x in ALL_SPECS:
            for spec_y in (MEAN, FunctionalSpec.quantile(0.7)):
                a = gcor(noisy_sample, spec_x, spec_y).correlation
                b = gcor(noisy_sample.swapped(), spec_y, spec_x).correlation
                assert a == b

    def test_identification_scaling_invariance(self, noisy_sample, rng):
        dx = empirical_cdf(noisy_sample.xs)
        dy = empirical_cdf(noisy_sample.ys)
        for spec in ALL_SPECS:
            ex = error_series(spec, noisy_sample.xs, dx)
            ey = error_series(FunctionalSpec.expectile(0.6), noisy_sample.ys, dy)
            base = gcor_from_errors(ex, ey).correlation
            for c in (1e-3, 0.7, 13.0, 1e5):
                scaled = gcor_from_errors(ex.scaled(c), ey).correlation
                scaled_y = gcor_from_errors(ex, ey.scaled(c)).correlation
                assert scaled == pytest.approx(base, abs=1e-12)
                assert scaled_y == pytest.approx(base, abs=1e-12)

    def test_expectile_affine_invariance(self, noisy_sample):
        spec_x, spec_y = FunctionalSpec.expectile(0.25), FunctionalSpec.expectile(0.7)
        base = gcor(noisy_sample, spec_x, spec_y).correlation
        for lam, c in ((2.5, 1.0), (0.03, -7.0), (1500.0, 4.2)):
            moved = make_sample(lam * noisy_sample.xs + c, noisy_sample.ys)
            assert gcor(moved, spec_x, spec_y).correlation == pytest.approx(base, abs=1e-12)
            moved_y = make_sample(noisy_sample.xs, lam * noisy_sample.ys + c)
            assert gcor(moved_y, spec_x, spec_y).correlation == pytest.approx(base, abs=1e-12)

    def test_independence_shrinks_with_n(self):
        small = sample_copula(CopulaSpec.independence(), 100, 5)
        large = sample_copula(CopulaSpec.independence(), 100000, 5)
        r_small = abs(gcor(small, MEAN, MEAN).correlation)
        r_large = abs(gcor(large, MEAN, MEAN).correlation)
        assert r_large < 0.02
        assert r_large < r_small
