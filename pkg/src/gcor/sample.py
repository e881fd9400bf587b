"""Observation containers, empirical distribution functions and joint CDFs.

Conventions used throughout the package:

* the empirical CDF is the right-continuous step function
  ``F(t) = #{i : x_i <= t} / n``;
* the empirical quantile is the lower quantile
  ``q(a) = inf{t : F(t) >= a}``, i.e. the order statistic with 1-based
  index ``ceil(n*a)``, without interpolation;
* ties are kept as they are, no jittering.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import EmptySample, LengthMismatch

__all__ = [
    "BivariateSample",
    "EmpiricalDistribution",
    "JointEmpiricalCDF",
    "make_sample",
    "empirical_cdf",
    "joint_cdf",
]


def _as_readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.float64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class BivariateSample:
    """Paired observations ``(x_i, y_i)``; arrays are immutable views."""

    xs: np.ndarray
    ys: np.ndarray

    @property
    def n(self) -> int:
        return self.xs.shape[0]

    def swapped(self) -> "BivariateSample":
        return BivariateSample(self.ys, self.xs)


def make_sample(xs, ys, na_policy: str = "drop_pairwise") -> BivariateSample:
    """Build a sample from two equal-length sequences.

    Non-finite entries (NaN, +-inf) are removed pairwise; the relative
    order of the retained pairs is preserved.
    """
    if na_policy != "drop_pairwise":
        raise ValueError(f"unknown na_policy: {na_policy!r}")
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    if xs.ndim != 1 or ys.ndim != 1 or xs.shape[0] != ys.shape[0]:
        raise LengthMismatch(
            f"xs and ys must be 1-d sequences of equal length, got {xs.shape} and {ys.shape}"
        )
    keep = np.isfinite(xs) & np.isfinite(ys)
    if not keep.any():
        raise EmptySample("no complete observation pair after pairwise deletion")
    return BivariateSample(_as_readonly(xs[keep]), _as_readonly(ys[keep]))


@dataclass(frozen=True)
class EmpiricalDistribution:
    """One margin: sorted values with step-CDF and lower-quantile evaluators."""

    sorted_values: np.ndarray

    @property
    def n(self) -> int:
        return self.sorted_values.shape[0]

    def cdf(self, t) -> float | np.ndarray:
        """``#{i : value_i <= t} / n``, right-continuous; accepts arrays."""
        counts = np.searchsorted(self.sorted_values, t, side="right")
        out = counts / self.n
        return float(out) if np.isscalar(t) or np.ndim(t) == 0 else out

    def quantile_index(self, alpha: float) -> int:
        """1-based index k of the lower quantile, ``min{k : k/n >= alpha}``.

        Computed by comparison against k/n rather than ``ceil(n*alpha)``,
        which can be off by one under floating-point rounding.
        """
        n = self.n
        if not 0.0 < alpha <= 1.0:
            raise ValueError(f"quantile level must be in (0, 1], got {alpha}")
        k = int(np.ceil(n * alpha))
        k = min(max(k, 1), n)
        while k > 1 and (k - 1) / n >= alpha:
            k -= 1
        while k < n and k / n < alpha:
            k += 1
        return k

    def quantile(self, alpha: float) -> float:
        """Lower empirical quantile ``inf{t : cdf(t) >= alpha}``."""
        return float(self.sorted_values[self.quantile_index(alpha) - 1])


def empirical_cdf(values) -> EmpiricalDistribution:
    """Empirical distribution of one margin (raises EmptySample when empty)."""
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        raise EmptySample("empty margin")
    return EmpiricalDistribution(_as_readonly(np.sort(values)))


@dataclass(frozen=True)
class JointEmpiricalCDF:
    """Bivariate step CDF ``F(a, b) = #{i : x_i <= a and y_i <= b} / n``."""

    sample: BivariateSample

    def __call__(self, a: float, b: float) -> float:
        s = self.sample
        count = int(np.count_nonzero((s.xs <= a) & (s.ys <= b)))
        return count / s.n


def joint_cdf(sample: BivariateSample, a: float, b: float) -> float:
    """Evaluate the joint empirical CDF of the sample at ``(a, b)``."""
    return JointEmpiricalCDF(sample)(a, b)
