from __future__ import annotations


class GinkitError(Exception):
    """Base class for every error raised by ginkit."""


class ParameterError(GinkitError, ValueError):
    """Invalid (alpha, beta, n, m) input. Message names the violated constraint."""


class StructuralViolation(GinkitError):
    """An invariant sequence broke one of the structural rules."""


class PreconditionError(GinkitError):
    """A runner or helper was called outside the region it covers."""


class IndexOutOfRange(GinkitError, IndexError):
    pass


class CoverageError(GinkitError):
    """No closed-form family covers an index, or two overlapping families disagree."""


class BoundExceeded(GinkitError):
    """Brute-force enumeration asked for more than the configured cap."""


class RegularityFailure(GinkitError):
    pass


class SingularMatrixError(GinkitError):
    pass


class CapExceeded(GinkitError):
    """Buchberger basis grew past the configured maximum size."""


class InstabilityError(GinkitError):
    """Independent random coordinate changes kept disagreeing."""
