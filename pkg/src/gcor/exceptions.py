"""Exception hierarchy shared across the package.

The CLI maps a subset of these onto stable exit codes, see ``gcor.cli``.
"""


class GcorError(Exception):
    """Base class for all errors raised by this package."""


class LengthMismatch(GcorError):
    """Paired inputs do not have the same length."""


class EmptySample(GcorError):
    """No complete observation pair is left after cleaning."""


class ParseError(GcorError):
    """Input file is not in the expected CSV format."""


class UnsupportedFunctional(GcorError):
    """The requested operation is undefined for this functional kind."""


class LevelOutOfRange(GcorError):
    """A quantile/expectile level lies outside the open unit interval."""


class InsufficientTailData(GcorError):
    """No tail level satisfies the minimum-occupancy rule."""


class InvalidParam(GcorError):
    """A copula family parameter is outside its admissible range."""


class UnsupportedFamily(GcorError):
    """The requested quantity has no implemented form for this family."""


class TargetUnattainable(GcorError):
    """The calibration target is outside the family's attainable range."""


class EmptyGrid(GcorError):
    """An evaluation grid is empty."""


class EmptyRegion(GcorError):
    """An integration rectangle contains no probability mass."""
