"""Generalised covariances and correlations.

Dependence measures built from generalised errors around statistical
functionals (mean, expectiles, quantiles, thresholds), normalised by the
sharp comonotone / countermonotone coupling bounds instead of
Cauchy-Schwarz: local quantile/threshold correlations, function-valued
dependence surfaces, tail correlations and integrated summary measures,
plus copula samplers and closed-form oracles for validation.
"""

from .copulas import (
    FAMILIES,
    CopulaSpec,
    TailLimits,
    calibrate_spearman,
    copula_cdf,
    population_qfcor,
    population_qfcov,
    population_tail,
    sample_copula,
    spearman_rho,
)
from .engine import CouplingBounds, MeasureResult, coupling_bounds, gcor, gcor_from_errors, gcov
from .exceptions import (
    EmptyGrid,
    EmptyRegion,
    EmptySample,
    GcorError,
    InsufficientTailData,
    InvalidParam,
    LengthMismatch,
    LevelOutOfRange,
    ParseError,
    TargetUnattainable,
    UnsupportedFamily,
    UnsupportedFunctional,
)
from .functionals import (
    ErrorSeries,
    FunctionalSpec,
    error_series,
    estimate_functional,
    id_expectile,
    id_mean,
    id_quantile,
)
from .grids import (
    DependenceSurface,
    GridSpec,
    cdf_surface,
    default_levels,
    global_dependence_classify,
    qf_surface,
    thread_cap,
)
from .local import (
    CorrectedLevels,
    blomqvist_beta,
    qcor,
    qcov,
    qmcor,
    qmcov,
    quantile_pearson_bounds,
    tcor,
    tcov,
)
from .sample import (
    BivariateSample,
    EmpiricalDistribution,
    JointEmpiricalCDF,
    empirical_cdf,
    joint_cdf,
    make_sample,
)
from .summary import MeasureSpec, SummaryResult, regional_scor, scor, scov_cdf, scov_qf
from .tail import TailClassification, TailCurve, default_tail_levels, tail_curve, tail_estimate

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # sample model
    "BivariateSample",
    "EmpiricalDistribution",
    "JointEmpiricalCDF",
    "make_sample",
    "empirical_cdf",
    "joint_cdf",
    # functionals and errors
    "FunctionalSpec",
    "ErrorSeries",
    "id_mean",
    "id_expectile",
    "id_quantile",
    "estimate_functional",
    "error_series",
    # engine
    "CouplingBounds",
    "MeasureResult",
    "gcov",
    "coupling_bounds",
    "gcor",
    "gcor_from_errors",
    # local measures
    "CorrectedLevels",
    "tcov",
    "tcor",
    "qcov",
    "qcor",
    "blomqvist_beta",
    "qmcov",
    "qmcor",
    "quantile_pearson_bounds",
    # surfaces
    "GridSpec",
    "DependenceSurface",
    "default_levels",
    "qf_surface",
    "cdf_surface",
    "global_dependence_classify",
    "thread_cap",
    # tail
    "TailCurve",
    "TailClassification",
    "default_tail_levels",
    "tail_curve",
    "tail_estimate",
    # summary
    "MeasureSpec",
    "SummaryResult",
    "scov_cdf",
    "scov_qf",
    "scor",
    "regional_scor",
    # copula lab
    "FAMILIES",
    "CopulaSpec",
    "TailLimits",
    "sample_copula",
    "copula_cdf",
    "population_qfcov",
    "population_qfcor",
    "population_tail",
    "spearman_rho",
    "calibrate_spearman",
    # errors
    "GcorError",
    "LengthMismatch",
    "EmptySample",
    "ParseError",
    "UnsupportedFunctional",
    "LevelOutOfRange",
    "InsufficientTailData",
    "InvalidParam",
    "UnsupportedFamily",
    "TargetUnattainable",
    "EmptyGrid",
    "EmptyRegion",
]
