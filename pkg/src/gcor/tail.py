"""Tail correlations along the diagonal and tail-dependence coefficients.

The tail correlation is the limit of the diagonal quantile correlation;
no extrapolation to the limit is attempted.  Instead the full curve over
the requested levels is reported together with the coefficient-of-tail-
dependence estimates, and the point estimate is read off at the most
extreme level whose expected tail mass still contains at least 10
observations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import InsufficientTailData, LevelOutOfRange
from .local import qcor
from .sample import BivariateSample, empirical_cdf

__all__ = [
    "TailCurve",
    "TailClassification",
    "default_tail_levels",
    "tail_curve",
    "tail_estimate",
]

MIN_TAIL_OBS = 10.0

_LOWER_LEVELS = (0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1)


def default_tail_levels(side: str) -> np.ndarray:
    """Levels walking towards the corner: small alphas for the lower tail,
    their mirror images for the upper tail."""
    if side == "lower":
        return np.array(_LOWER_LEVELS)
    if side == "upper":
        return 1.0 - np.array(_LOWER_LEVELS)[::-1]
    raise ValueError(f"side must be 'lower' or 'upper', got {side!r}")


@dataclass(frozen=True)
class TailCurve:
    """Diagonal quantile correlations and tail-dependence coefficient
    estimates over a sequence of levels, with the joint corner counts."""

    side: str
    levels: np.ndarray
    qcor_values: np.ndarray
    lambda_values: np.ndarray
    corner_counts: np.ndarray
    n: int


@dataclass(frozen=True)
class TailClassification:
    label: str  # positively_dependent | negatively_dependent | independent | comonotonic | countermonotonic
    estimate: float
    level: float


def tail_curve(sample: BivariateSample, side: str, levels=None) -> TailCurve:
    """Evaluate qcor(a, a) and the tail-dependence coefficient per level.

    Lower tail: lambda(a) = F_xy(qx, qy) / u*.  Upper tail: the survival
    analogue, joint exceedance count over n, divided by 1 - u*.  A zero
    corner count always yields lambda = 0.
    """
    if side not in ("lower", "upper"):
        raise ValueError(f"side must be 'lower' or 'upper', got {side!r}")
    levels = default_tail_levels(side) if levels is None else np.asarray(levels, dtype=np.float64)
    if np.any(levels <= 0.0) or np.any(levels >= 1.0):
        raise LevelOutOfRange("tail levels must lie strictly inside (0, 1)")

    n = sample.n
    dist_x = empirical_cdf(sample.xs)
    dist_y = empirical_cdf(sample.ys)
    cors = np.empty(levels.size)
    lams = np.empty(levels.size)
    corners = np.empty(levels.size, dtype=np.int64)
    for i, a in enumerate(levels):
        cors[i] = qcor(sample, a, a).correlation
        qx = dist_x.quantile(a)
        qy = dist_y.quantile(a)
        below_x = int(np.count_nonzero(sample.xs <= qx))
        if side == "lower":
            corner = int(np.count_nonzero((sample.xs <= qx) & (sample.ys <= qy)))
            lams[i] = (corner / n) / (below_x / n) if corner else 0.0
        else:
            corner = int(np.count_nonzero((sample.xs > qx) & (sample.ys > qy)))
            # survival form of the corrected level, computed from counts
            lams[i] = (corner / n) / ((n - below_x) / n) if corner else 0.0
        corners[i] = corner
    return TailCurve(side, levels, cors, lams, corners, n)


def tail_estimate(curve: TailCurve) -> TailClassification:
    """Read the tail correlation off the curve and label it.

    Feasible levels must keep at least 10 expected observations in the
    tail (n * mass >= 10 with mass = a for the lower, 1 - a for the upper
    side); the most extreme feasible level wins.  The sign label uses the
    binomial-scale tolerance 2 / sqrt(n * mass); estimates within that
    tolerance of +-1 are labelled (counter)monotonic.
    """
    mass = curve.levels if curve.side == "lower" else 1.0 - curve.levels
    feasible = np.flatnonzero(curve.n * mass >= MIN_TAIL_OBS)
    if feasible.size == 0:
        raise InsufficientTailData(
            f"no level keeps {MIN_TAIL_OBS:.0f} expected observations in the {curve.side} tail (n={curve.n})"
        )
    idx = int(feasible[0]) if curve.side == "lower" else int(feasible[-1])
    estimate = float(curve.qcor_values[idx])
    tol = 2.0 / np.sqrt(curve.n * mass[idx])
    if estimate >= 1.0 - tol:
        label = "comonotonic"
    elif estimate <= -1.0 + tol:
        label = "countermonotonic"
    elif estimate > tol:
        label = "positively_dependent"
    elif estimate < -tol:
        label = "negatively_dependent"
    else:
        label = "independent"
    return TailClassification(label, estimate, float(curve.levels[idx]))
