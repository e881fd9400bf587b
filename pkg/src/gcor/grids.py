"""Function-valued dependence surfaces on level or threshold grids.

A surface cell is exactly the scalar local measure at that grid point
(same counting, same arithmetic), but all cells are computed in one pass
from a two-dimensional cumulative histogram, so a full 99x99 level grid
on 1e5 observations takes milliseconds.

Cells where an error series would be constant (levels at 0 or 1, grid
points at or beyond the data range) carry the value 0 and are flagged in
a separate degenerate mask so that the matrix stays rectangular.

The environment variable ``GCOR_THREADS`` caps the number of worker
threads used for assembling large correlation surfaces (0 or unset means
automatic); chunks are row-aligned and the output does not depend on the
schedule.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .exceptions import EmptyGrid, LevelOutOfRange
from .sample import BivariateSample, empirical_cdf

__all__ = [
    "GridSpec",
    "DependenceSurface",
    "default_levels",
    "qf_surface",
    "cdf_surface",
    "global_dependence_classify",
    "thread_cap",
]

DEFAULT_TRIM = (0.025, 0.975)


def thread_cap() -> int:
    """Worker-thread cap from GCOR_THREADS; 0 means automatic (serial here)."""
    raw = os.environ.get("GCOR_THREADS", "").strip()
    if not raw:
        return 0
    try:
        return max(int(raw), 0)
    except ValueError:
        return 0


def default_levels() -> np.ndarray:
    """The default quantile grid 0.01, 0.02, ..., 0.99."""
    return np.arange(1, 100) / 100.0


@dataclass(frozen=True)
class GridSpec:
    """Grid selection for a surface: quantile levels, explicit threshold
    grids, or data-driven breakpoints with a trim pair."""

    mode: str  # "quantile" | "threshold" | "data_breakpoints"
    levels: np.ndarray | None = None
    xs_grid: np.ndarray | None = None
    ys_grid: np.ndarray | None = None
    trim: tuple[float, float] = DEFAULT_TRIM

    @classmethod
    def quantile(cls, levels=None) -> "GridSpec":
        levels = default_levels() if levels is None else np.asarray(levels, dtype=np.float64)
        return cls("quantile", levels=levels)

    @classmethod
    def threshold(cls, xs_grid, ys_grid) -> "GridSpec":
        return cls(
            "threshold",
            xs_grid=np.asarray(xs_grid, dtype=np.float64),
            ys_grid=np.asarray(ys_grid, dtype=np.float64),
        )

    @classmethod
    def data_breakpoints(cls, trim: tuple[float, float] = DEFAULT_TRIM) -> "GridSpec":
        lo, hi = trim
        if not 0.0 <= lo < hi <= 1.0:
            raise LevelOutOfRange(f"trim must satisfy 0 <= lo < hi <= 1, got {trim}")
        return cls("data_breakpoints", trim=(float(lo), float(hi)))

    def build(self, sample: BivariateSample, value: str = "cor") -> "DependenceSurface":
        if self.mode == "quantile":
            return qf_surface(sample, self.levels, value=value)
        if self.mode == "threshold":
            return cdf_surface(sample, xs_grid=self.xs_grid, ys_grid=self.ys_grid, value=value)
        return cdf_surface(sample, trim=self.trim, value=value)


@dataclass(frozen=True)
class DependenceSurface:
    """Correlations (or covariances) evaluated on a rectangular grid."""

    measure: str  # "CDFCov" | "CDFCor" | "QFCov" | "QFCor"
    axis_x: np.ndarray
    axis_y: np.ndarray
    values: np.ndarray
    degenerate: np.ndarray
    n: int

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape


def _joint_counts(bx: np.ndarray, by: np.ndarray, gx: int, gy: int) -> np.ndarray:
    """Cumulative 2-d histogram: entry (i, j) counts observations whose
    bucket indices satisfy bx <= i and by <= j."""
    hist = np.bincount(bx * (gy + 1) + by, minlength=(gx + 1) * (gy + 1))
    hist = hist.reshape(gx + 1, gy + 1)
    return hist.cumsum(axis=0).cumsum(axis=1)[:gx, :gy]


def _assemble(cov, upper, lower, degenerate, value, workers):
    if value == "cov":
        out = cov.copy()
        out[degenerate] = 0.0
        return out

    def block(sl):
        with np.errstate(divide="ignore", invalid="ignore"):
            pos = np.where(upper[sl] > 0.0, cov[sl] / np.where(upper[sl] > 0.0, upper[sl], 1.0), 0.0)
            neg = np.where(lower[sl] < 0.0, cov[sl] / np.abs(np.where(lower[sl] < 0.0, lower[sl], -1.0)), 0.0)
        res = np.where(cov[sl] >= 0.0, pos, neg)
        res[degenerate[sl]] = 0.0
        return res

    rows = cov.shape[0]
    if workers > 1 and rows > 1:
        slices = [slice(i, min(i + max(rows // workers, 1), rows)) for i in range(0, rows, max(rows // workers, 1))]
        out = np.empty_like(cov)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for sl, res in zip(slices, pool.map(block, slices)):
                out[sl] = res
        return out
    return block(slice(None))


def qf_surface(sample: BivariateSample, levels=None, value: str = "cor") -> DependenceSurface:
    """Quantile-level surface: cell (i, j) is qcor (or qcov) at (level_i, level_j)."""
    if value not in ("cor", "cov"):
        raise ValueError(f"value must be 'cor' or 'cov', got {value!r}")
    levels = default_levels() if levels is None else np.asarray(levels, dtype=np.float64)
    if levels.size == 0:
        raise EmptyGrid("empty level grid")
    if np.any(levels <= 0.0) or np.any(levels >= 1.0) or np.any(np.diff(levels) <= 0.0):
        raise LevelOutOfRange("levels must be strictly ascending inside (0, 1)")

    n = sample.n
    dist_x = empirical_cdf(sample.xs)
    dist_y = empirical_cdf(sample.ys)
    qx = np.array([dist_x.quantile(a) for a in levels])
    qy = np.array([dist_y.quantile(a) for a in levels])
    u_star = np.searchsorted(dist_x.sorted_values, qx, side="right") / n
    v_star = np.searchsorted(dist_y.sorted_values, qy, side="right") / n

    bx = np.searchsorted(qx, sample.xs, side="left")
    by = np.searchsorted(qy, sample.ys, side="left")
    joint = _joint_counts(bx, by, levels.size, levels.size) / n

    prod = u_star[:, None] * v_star[None, :]
    cov = joint - prod
    upper = np.minimum(u_star[:, None], v_star[None, :]) - prod
    lower = np.maximum(u_star[:, None] + v_star[None, :] - 1.0, 0.0) - prod
    degenerate = (u_star == 1.0)[:, None] | (v_star == 1.0)[None, :]

    values = _assemble(cov, upper, lower, degenerate, value, thread_cap())
    return DependenceSurface(
        measure="QFCov" if value == "cov" else "QFCor",
        axis_x=levels.copy(),
        axis_y=levels.copy(),
        values=values,
        degenerate=degenerate,
        n=n,
    )


def _breakpoints(values: np.ndarray, dist, trim: tuple[float, float]) -> np.ndarray:
    lo, hi = trim
    lo_val = -np.inf if lo == 0.0 else dist.quantile(lo)
    hi_val = dist.quantile(hi) if hi < 1.0 else dist.sorted_values[-1]
    keep = np.unique(values[(values >= lo_val) & (values <= hi_val)])
    return keep


def cdf_surface(
    sample: BivariateSample,
    xs_grid=None,
    ys_grid=None,
    value: str = "cor",
    trim: tuple[float, float] = DEFAULT_TRIM,
) -> DependenceSurface:
    """Threshold surface: cell (i, j) is tcor (or tcov) at (a_i, b_j).

    Without explicit grids the axes are the distinct data values inside
    the trimmed quantile range of each margin.
    """
    if value not in ("cor", "cov"):
        raise ValueError(f"value must be 'cor' or 'cov', got {value!r}")
    n = sample.n
    dist_x = empirical_cdf(sample.xs)
    dist_y = empirical_cdf(sample.ys)
    if xs_grid is None:
        xs_grid = _breakpoints(sample.xs, dist_x, trim)
    else:
        xs_grid = np.asarray(xs_grid, dtype=np.float64)
    if ys_grid is None:
        ys_grid = _breakpoints(sample.ys, dist_y, trim)
    else:
        ys_grid = np.asarray(ys_grid, dtype=np.float64)
    if xs_grid.size == 0 or ys_grid.size == 0:
        raise EmptyGrid("threshold grid is empty")
    if np.any(np.diff(xs_grid) <= 0.0) or np.any(np.diff(ys_grid) <= 0.0):
        raise ValueError("threshold grids must be strictly ascending")

    u = np.searchsorted(dist_x.sorted_values, xs_grid, side="right") / n
    v = np.searchsorted(dist_y.sorted_values, ys_grid, side="right") / n

    bx = np.searchsorted(xs_grid, sample.xs, side="left")
    by = np.searchsorted(ys_grid, sample.ys, side="left")
    joint = _joint_counts(bx, by, xs_grid.size, ys_grid.size) / n

    prod = u[:, None] * v[None, :]
    cov = joint - prod
    upper = np.minimum(u[:, None], v[None, :]) - prod
    lower = np.maximum(u[:, None] + v[None, :] - 1.0, 0.0) - prod
    degenerate = ((u == 0.0) | (u == 1.0))[:, None] | ((v == 0.0) | (v == 1.0))[None, :]

    values = _assemble(cov, upper, lower, degenerate, value, thread_cap())
    return DependenceSurface(
        measure="CDFCov" if value == "cov" else "CDFCor",
        axis_x=xs_grid.copy(),
        axis_y=ys_grid.copy(),
        values=values,
        degenerate=degenerate,
        n=n,
    )


def global_dependence_classify(surface: DependenceSurface, tol: float | None = None) -> str:
    """Classify a covariance surface as positive / negative / mixed.

    ``tol`` defaults to 2/sqrt(n), the order of the sampling noise of a
    single cell.  Requires a covariance-mode surface.
    """
    if surface.measure not in ("CDFCov", "QFCov"):
        raise ValueError("classification needs a covariance surface, not " + surface.measure)
    if tol is None:
        tol = 2.0 / np.sqrt(surface.n)
    if np.all(surface.values >= -tol):
        return "positive"
    if np.all(surface.values <= tol):
        return "negative"
    return "mixed"
