"""Exception hierarchy shared by all localarith modules.

The CLI maps these onto exit codes: invalid input -> 2,
hypothesis failures -> 3, precision loss -> 4.
"""


class LocalArithError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgumentError(LocalArithError, ValueError):
    """An argument violates a documented precondition."""


class ExcludedCaseError(InvalidArgumentError):
    """The requested case is explicitly excluded (e.g. squaring on 1 + 2Z_2)."""


class ResourceLimitError(InvalidArgumentError):
    """A configurable size bound was exceeded."""


class InconsistencyError(InvalidArgumentError):
    """Input data is internally inconsistent (e.g. depth data not quotient-compatible)."""


class HypothesisFailedError(LocalArithError):
    """A theorem hypothesis required by an algorithm does not hold for the input."""


class NotASquareError(HypothesisFailedError):
    """A square root was requested of a value that is not a square."""


class PrecisionLossError(LocalArithError):
    """The answer cannot be certified at the available precision."""
