"""Exception taxonomy for the library's public result contracts."""


class HeiskernError(Exception):
    """Base class for all library-specific errors."""


class DomainError(HeiskernError, ValueError):
    """Input outside an operation's stated precondition."""


class PoleError(DomainError):
    """Parameter sits on (or within guard distance of) a pole."""


class OverflowRangeError(HeiskernError, OverflowError):
    """Result magnitude exceeds the representable double range."""


class DimensionMismatchError(DomainError):
    """Binary group operation on points of different dimension."""


class SingularityError(DomainError):
    """Kernel evaluated at its singular point."""


class UnsupportedRepresentationError(DomainError):
    """The integral representation degenerates for this input (z = 0)."""


class NonFiniteIntegrandError(HeiskernError):
    """An integrand sample came back NaN or infinite."""

    def __init__(self, x, message=None):
        self.x = x
        super().__init__(message or f"non-finite integrand sample at x={x!r}")


class DecayHintViolatedError(HeiskernError):
    """Sampled magnitudes exceed the declared decay envelope by > 10x."""


class ResolutionBudgetError(HeiskernError):
    """Oscillation too fast relative to decay for a certifiable result."""


class QuadratureNonConvergenceError(HeiskernError):
    """A quadrature-backed operation could not meet its tolerances."""


class SeriesNonConvergenceError(HeiskernError):
    """A hypergeometric series failed to converge within the term budget."""


class CubatureBudgetError(HeiskernError):
    """The distributional cubature exhausted its evaluation budget."""
