"""Exception types raised across the package."""


class SisLabError(Exception):
    """Base class for all errors raised by sis_lab."""


class InadmissibleParams(SisLabError, ValueError):
    """Parameters violate a normalization or admissibility constraint."""


class NonConvergence(SisLabError, ArithmeticError):
    """A series or an adaptive truncation failed to converge within its cap."""


class TruncationLeak(SisLabError, ArithmeticError):
    """Probability pushed beyond the truncated Fock space exceeds the tolerance."""


class DegenerateState(SisLabError, ValueError):
    """The requested superposition vanishes identically."""


class NotPositiveDefinite(SisLabError, ValueError):
    """An uncertainty matrix is not symmetric positive definite."""
