"""Generic generalised covariance, coupling bounds and correlation.

The covariance is the plain product moment ``mean(ex_i * ey_i)`` (1/n
convention).  Its sharp envelope comes from re-pairing the two error
series through the comonotone and countermonotone order-statistic
couplings; the correlation divides by the bound matching the covariance
sign.  All sums use ``math.fsum`` so that re-pairings of the same product
multiset (comonotone data, rescaled errors, ...) give bit-identical
results and the perfect-dependence cases come out exactly +-1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import LengthMismatch
from .functionals import ErrorSeries, FunctionalSpec, error_series
from .sample import BivariateSample, empirical_cdf

__all__ = [
    "CouplingBounds",
    "MeasureResult",
    "gcov",
    "coupling_bounds",
    "gcor",
    "gcor_from_errors",
]


@dataclass(frozen=True)
class CouplingBounds:
    """Countermonotone (lower <= 0) and comonotone (upper >= 0) covariances."""

    lower: float
    upper: float


@dataclass(frozen=True)
class MeasureResult:
    """A covariance, its coupling bounds and the normalised correlation.

    ``degenerate`` is set when one error series is constant; the
    correlation is 0 in that case by convention.
    """

    covariance: float
    bounds: CouplingBounds
    correlation: float
    degenerate: bool


def _mean_product(a: np.ndarray, b: np.ndarray) -> float:
    return math.fsum(a * b) / a.shape[0]


def _check_lengths(ex: np.ndarray, ey: np.ndarray) -> None:
    if ex.shape[0] != ey.shape[0]:
        raise LengthMismatch(
            f"error series lengths differ: {ex.shape[0]} vs {ey.shape[0]}"
        )


def normalise(covariance: float, bounds: CouplingBounds, degenerate: bool) -> float:
    """Sign-dependent ratio: divide by |upper| when cov >= 0, |lower| otherwise.

    When the relevant bound is 0 the covariance is 0 as well (sandwich
    property) and the correlation is defined as 0.
    """
    if degenerate:
        return 0.0
    if covariance >= 0.0:
        return covariance / bounds.upper if bounds.upper > 0.0 else 0.0
    return covariance / abs(bounds.lower) if bounds.lower < 0.0 else 0.0


def gcov(ex: ErrorSeries, ey: ErrorSeries) -> float:
    """Sample generalised covariance ``mean(ex_i * ey_i)`` over the original pairing."""
    _check_lengths(ex.values, ey.values)
    return _mean_product(ex.values, ey.values)


def coupling_bounds(ex: ErrorSeries, ey: ErrorSeries) -> CouplingBounds:
    """Covariances of the two error series under the extreme re-pairings.

    Upper: both series sorted ascending and paired rank by rank; lower:
    one series reversed.  The fitted functionals are kept from the
    original sample, there is no refit on the coupled sample.
    """
    _check_lengths(ex.values, ey.values)
    sx = np.sort(ex.values)
    sy = np.sort(ey.values)
    upper = _mean_product(sx, sy)
    lower = _mean_product(sx, sy[::-1])
    return CouplingBounds(lower=lower, upper=upper)


def gcor_from_errors(ex: ErrorSeries, ey: ErrorSeries) -> MeasureResult:
    """Correlation built from two already-computed error series.

    This is also the extension point for user-supplied identification
    functions: wrap the per-observation errors in :class:`ErrorSeries`
    (pairing preserved, centred, increasing in the data) and normalise
    here.
    """
    degenerate = ex.is_constant() or ey.is_constant()
    cov = gcov(ex, ey)
    bounds = coupling_bounds(ex, ey)
    return MeasureResult(cov, bounds, normalise(cov, bounds, degenerate), degenerate)


def gcor(sample: BivariateSample, spec_x: FunctionalSpec, spec_y: FunctionalSpec) -> MeasureResult:
    """Generalised correlation of the sample at two functionals."""
    ex = error_series(spec_x, sample.xs, empirical_cdf(sample.xs))
    ey = error_series(spec_y, sample.ys, empirical_cdf(sample.ys))
    return gcor_from_errors(ex, ey)
