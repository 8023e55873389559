"""Exception hierarchy.

Everything raised on purpose by the library derives from :class:`OIGError`,
which is a ``ValueError`` so that sklearn-style callers catching bad input keep
working. The CLI maps these to exit code 1.
"""


class OIGError(ValueError):
    """Base class for domain errors."""


class InvalidClassError(OIGError):
    pass


class InvalidSampleError(OIGError):
    pass


class CapExceededError(OIGError):
    """An enumeration would exceed a configured size cap."""


class InfeasibleError(OIGError):
    """Requested degree demands cannot be met by any (fractional) orientation."""


class OrientationMismatchError(OIGError):
    """An orientation or learner does not fit the graph it is applied to."""
