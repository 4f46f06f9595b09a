"""Exception types shared across the package.

The CLI maps these onto its exit codes: validation problems exit with 2,
size limits with 3 and numerical failures with 4.
"""


class DGLDPCError(Exception):
    """Base class for every error raised by this package."""


class SpecError(DGLDPCError, ValueError):
    """An ensemble or component-code description is invalid."""


class RealizabilityError(SpecError):
    """Per-type node counts are not integral for the requested ``n``."""

    def __init__(self, message, n=None, suggested_n=None, period=None):
        super().__init__(message)
        self.n = n
        self.suggested_n = suggested_n
        self.period = period


class SizeLimitError(DGLDPCError):
    """An exhaustive enumeration or exact computation exceeds its cap."""


class NumericalError(DGLDPCError, ArithmeticError):
    """A root finder or optimizer failed to reach its tolerance."""


class NotApplicableError(DGLDPCError):
    """The requested quantity is undefined for this ensemble."""


class InfeasibleError(DGLDPCError, ValueError):
    """No split assignment exists at the requested normalized weight."""
