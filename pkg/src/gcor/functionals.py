"""Statistical functionals, identification functions and generalised errors.

Four functional families are supported: mean, expectile(tau),
quantile(alpha) and threshold(a).  Mean and expectile errors come from
plugging the fitted functional into the identification function; quantile
and threshold errors are centred exceedance indicators, with the quantile
level replaced by the corrected level ``F(q_alpha)`` so that the series is
centred even when the CDF jumps at the quantile.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidParam, UnsupportedFunctional
from .sample import EmpiricalDistribution

__all__ = [
    "FunctionalSpec",
    "ErrorSeries",
    "id_mean",
    "id_expectile",
    "id_quantile",
    "estimate_functional",
    "error_series",
]

_KINDS = ("mean", "expectile", "quantile", "threshold")


@dataclass(frozen=True)
class FunctionalSpec:
    """A functional family plus its parameter (level or threshold point)."""

    kind: str
    level: float | None = None  # tau for expectile, alpha for quantile
    point: float | None = None  # threshold location

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise InvalidParam(f"unknown functional kind {self.kind!r}")
        if self.kind in ("expectile", "quantile"):
            if self.level is None or not 0.0 < self.level < 1.0:
                raise InvalidParam(f"{self.kind} level must lie in (0, 1), got {self.level}")
        if self.kind == "threshold":
            if self.point is None or not math.isfinite(self.point):
                raise InvalidParam(f"threshold point must be finite, got {self.point}")

    @classmethod
    def mean(cls) -> "FunctionalSpec":
        return cls("mean")

    @classmethod
    def expectile(cls, tau: float) -> "FunctionalSpec":
        return cls("expectile", level=tau)

    @classmethod
    def quantile(cls, alpha: float) -> "FunctionalSpec":
        return cls("quantile", level=alpha)

    @classmethod
    def threshold(cls, point: float) -> "FunctionalSpec":
        return cls("threshold", point=point)

    def describe(self) -> str:
        if self.kind == "mean":
            return "mean"
        if self.kind == "threshold":
            return f"threshold({self.point:g})"
        return f"{self.kind}({self.level:g})"


@dataclass(frozen=True)
class ErrorSeries:
    """Per-observation generalised errors for one margin and one functional.

    ``fitted_value`` is the estimated functional: the sample mean /
    expectile / quantile, or for thresholds the attained level ``F(a)``.
    The values keep the observation order of the input margin.
    """

    values: np.ndarray
    functional: FunctionalSpec
    fitted_value: float

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def is_constant(self) -> bool:
        return bool(self.values.max() == self.values.min())

    def scaled(self, c: float) -> "ErrorSeries":
        """Errors induced by the identification function rescaled by ``c > 0``."""
        if c <= 0:
            raise InvalidParam("scaling constant must be positive")
        return ErrorSeries(self.values * c, self.functional, self.fitted_value)


def id_mean(t, x):
    """Identification function of the mean, ``x - t``."""
    return x - t


def id_expectile(tau: float, t, x):
    """Identification function of the tau-expectile, ``2|1{x<=t} - tau|(x - t)``."""
    return 2.0 * np.abs((x <= t) - tau) * (x - t)


def id_quantile(alpha: float, t, x):
    """Identification function of the alpha-quantile, ``alpha - 1{x<=t}``."""
    return alpha - (x <= t)


def _expectile_root(tau: float, dist: EmpiricalDistribution) -> float:
    """Unique zero of ``t -> mean(id_expectile(tau, t, x))``.

    The sample moment map is continuous, strictly decreasing and piecewise
    linear with kinks at the data values, so the root is bracketed between
    adjacent distinct order statistics and then solved in closed form.
    """
    sv = dist.sorted_values
    n = dist.n
    uniq, first = np.unique(sv, return_index=True)
    # count of and sum over observations <= each distinct value
    counts = np.append(first[1:], n)
    sums = np.cumsum(sv)[counts - 1]
    total = sums[-1]
    # sample moment map evaluated at every distinct data value
    vals = 2.0 * ((1.0 - tau) * (sums - counts * uniq) + tau * (total - sums - (n - counts) * uniq)) / n
    j = int(np.searchsorted(-vals, 0.0, side="left"))  # first index with vals[j] <= 0
    if j >= uniq.size:
        j = uniq.size - 1
    if vals[j] == 0.0:
        return float(uniq[j])
    # root lies in (uniq[j-1], uniq[j]); there the "<= t" count is counts[j-1]
    c = int(counts[j - 1]) if j > 0 else 0
    s = float(sums[j - 1]) if j > 0 else 0.0
    denom = (1.0 - tau) * c + tau * (n - c)
    root = ((1.0 - tau) * s + tau * (total - s)) / denom
    lo = float(uniq[j - 1]) if j > 0 else float(uniq[0])
    hi = float(uniq[j])
    return float(min(max(root, lo), hi))


def estimate_functional(spec: FunctionalSpec, dist: EmpiricalDistribution) -> float:
    """Solve the sample moment equation ``mean(v(t, x_i)) = 0`` for ``t``.

    mean -> sample average, quantile -> lower sample quantile, expectile ->
    root of the monotone sample moment map.  Thresholds need no fitting.
    """
    if spec.kind == "mean":
        return math.fsum(dist.sorted_values) / dist.n
    if spec.kind == "quantile":
        return dist.quantile(spec.level)
    if spec.kind == "expectile":
        return _expectile_root(spec.level, dist)
    raise UnsupportedFunctional("threshold functionals are fixed points, nothing to estimate")


def error_series(spec: FunctionalSpec, values, dist: EmpiricalDistribution) -> ErrorSeries:
    """Generalised errors of one margin for the given functional.

    ``values`` is the margin in observation order; ``dist`` its empirical
    distribution.  Quantile errors use the corrected level ``F(q_alpha)``
    on every sample (it equals ``ceil(n*alpha)/n`` when there are no ties
    at the quantile), threshold errors the attained level ``F(a)``.
    """
    x = np.asarray(values, dtype=np.float64)
    if spec.kind in ("mean", "expectile"):
        t_hat = estimate_functional(spec, dist)
        e = x - t_hat if spec.kind == "mean" else id_expectile(spec.level, t_hat, x)
        return ErrorSeries(e, spec, t_hat)
    if spec.kind == "quantile":
        q_hat = dist.quantile(spec.level)
        u_star = dist.cdf(q_hat)
        return ErrorSeries(u_star - (x <= q_hat), spec, q_hat)
    # threshold: centred exceedance indicator at a fixed point
    a = spec.point
    level = dist.cdf(a)
    return ErrorSeries(level - (x <= a), spec, level)
