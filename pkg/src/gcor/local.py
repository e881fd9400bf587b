"""Local dependence: threshold and quantile covariances and correlations.

Threshold measures live on the observation scale; quantile measures on
the level scale.  Both reduce to counting joint exceedances, and their
normalisations are the sharp joint-CDF / copula envelopes evaluated at
the (corrected) marginal levels, so no coupling sums are needed here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .engine import CouplingBounds, MeasureResult, gcor_from_errors, normalise
from .exceptions import LevelOutOfRange
from .functionals import ErrorSeries, FunctionalSpec
from .sample import BivariateSample, empirical_cdf

__all__ = [
    "CorrectedLevels",
    "tcov",
    "tcor",
    "qcov",
    "qcor",
    "blomqvist_beta",
    "qmcov",
    "qmcor",
    "quantile_pearson_bounds",
]


@dataclass(frozen=True)
class CorrectedLevels:
    """CDF values at the sample quantiles, ``u* = F_X(q_alpha)`` and ``v* = F_Y(q_beta)``."""

    u_star: float
    v_star: float


def _check_level(alpha: float, name: str = "level") -> None:
    if not 0.0 < alpha < 1.0:
        raise LevelOutOfRange(f"{name} must lie in (0, 1), got {alpha}")


def _level_bounds(u: float, v: float) -> CouplingBounds:
    """Sharp bounds for a centred-indicator covariance at marginal levels u, v.

    Clamped to the signs the exact values have; rounding can otherwise
    push a degenerate corner (level 0 or 1) across zero.
    """
    prod = u * v
    return CouplingBounds(
        lower=min(max(u + v - 1.0, 0.0) - prod, 0.0),
        upper=max(min(u, v) - prod, 0.0),
    )


def _counted_measure(sample: BivariateSample, a: float, b: float) -> tuple[float, float, float]:
    """Marginal levels and joint level of the events {x <= a}, {y <= b}."""
    n = sample.n
    below_x = sample.xs <= a
    below_y = sample.ys <= b
    u = int(np.count_nonzero(below_x)) / n
    v = int(np.count_nonzero(below_y)) / n
    joint = int(np.count_nonzero(below_x & below_y)) / n
    return u, v, joint


def tcov(sample: BivariateSample, a: float, b: float) -> float:
    """Threshold covariance ``F_xy(a, b) - F_x(a) F_y(b)``."""
    u, v, joint = _counted_measure(sample, a, b)
    return joint - u * v


def tcor(sample: BivariateSample, a: float, b: float) -> MeasureResult:
    """Threshold correlation; degenerate (0) when either level is 0 or 1."""
    u, v, joint = _counted_measure(sample, a, b)
    cov = joint - u * v
    bounds = _level_bounds(u, v)
    degenerate = u in (0.0, 1.0) or v in (0.0, 1.0)
    return MeasureResult(cov, bounds, normalise(cov, bounds, degenerate), degenerate)


def _quantile_levels(sample: BivariateSample, alpha: float, beta: float):
    qx = empirical_cdf(sample.xs).quantile(alpha)
    qy = empirical_cdf(sample.ys).quantile(beta)
    u, v, joint = _counted_measure(sample, qx, qy)
    return qx, qy, CorrectedLevels(u, v), joint


def qcov(sample: BivariateSample, alpha: float, beta: float) -> tuple[float, CorrectedLevels]:
    """Quantile covariance with its corrected levels.

    Equals the threshold covariance at the pair of sample quantiles;
    the corrected levels make the underlying errors centred under ties.
    """
    _check_level(alpha, "alpha")
    _check_level(beta, "beta")
    _, _, levels, joint = _quantile_levels(sample, alpha, beta)
    return joint - levels.u_star * levels.v_star, levels


def qcor(sample: BivariateSample, alpha: float, beta: float) -> MeasureResult:
    """Quantile correlation with corrected-level copula bounds.

    Degenerate (0) when a corrected level is 1, i.e. the quantile sits at
    the sample maximum and the error series is constant.
    """
    _check_level(alpha, "alpha")
    _check_level(beta, "beta")
    _, _, levels, joint = _quantile_levels(sample, alpha, beta)
    cov = joint - levels.u_star * levels.v_star
    bounds = _level_bounds(levels.u_star, levels.v_star)
    degenerate = levels.u_star == 1.0 or levels.v_star == 1.0
    return MeasureResult(cov, bounds, normalise(cov, bounds, degenerate), degenerate)


def blomqvist_beta(sample: BivariateSample) -> float:
    """``4 F_xy(med_x, med_y) - 1`` at the lower sample medians."""
    qx = empirical_cdf(sample.xs).quantile(0.5)
    qy = empirical_cdf(sample.ys).quantile(0.5)
    _, _, joint = _counted_measure(sample, qx, qy)
    return 4.0 * joint - 1.0


def _qm_error_series(sample: BivariateSample, alpha: float) -> tuple[ErrorSeries, ErrorSeries]:
    """Raw-level quantile errors for x paired with mean errors for y.

    The raw level alpha (not the corrected one) keeps the population
    definition usable under CDF jumps because the mean error is centred
    on its own; empirically the y-errors sum to zero exactly.
    """
    _check_level(alpha, "alpha")
    q_hat = empirical_cdf(sample.xs).quantile(alpha)
    ex = ErrorSeries(alpha - (sample.xs <= q_hat), FunctionalSpec.quantile(alpha), q_hat)
    y_bar = math.fsum(sample.ys) / sample.n
    ey = ErrorSeries(sample.ys - y_bar, FunctionalSpec.mean(), y_bar)
    return ex, ey


def qmcov(sample: BivariateSample, alpha: float) -> float:
    """Quantile-mean covariance ``mean((alpha - 1{x <= q_alpha}) (y - mean(y)))``."""
    ex, ey = _qm_error_series(sample, alpha)
    return math.fsum(ex.values * ey.values) / sample.n


def qmcor(sample: BivariateSample, alpha: float) -> MeasureResult:
    """Quantile-mean correlation, normalised via the generic coupling bounds.

    The expected-shortfall closed form of the bounds assumes continuous
    strictly increasing marginals, so it is only used as a test oracle.
    """
    ex, ey = _qm_error_series(sample, alpha)
    return gcor_from_errors(ex, ey)


def quantile_pearson_bounds(alpha: float, beta: float) -> tuple[float, float]:
    """Cauchy-Schwarz envelope of the Pearson correlation of quantile errors.

    For continuous margins the quantile error at level ``a`` is a centred
    Bernoulli indicator with variance ``a(1-a)``, so the attainable
    Pearson correlation of two such errors is bounded by the copula
    envelope divided by the product of standard deviations.  Returns
    ``(lower, upper)``; depends on the levels only.
    """
    _check_level(alpha, "alpha")
    _check_level(beta, "beta")
    sd = math.sqrt(alpha * (1.0 - alpha)) * math.sqrt(beta * (1.0 - beta))
    prod = alpha * beta
    upper = (min(alpha, beta) - prod) / sd
    lower = (max(alpha + beta - 1.0, 0.0) - prod) / sd
    return lower, upper
