"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for all errors raised by this package."""


class NotHermitian(ToolkitError, ValueError):
    """Matrix violates the Hermitian symmetry tolerance."""


class NoConvergence(ToolkitError, RuntimeError):
    """Iterative eigensolver exceeded its sweep limit."""


class SingularState(ToolkitError, ValueError):
    """State has an eigenvalue at or below the logarithm floor."""


class QuadratureFailure(ToolkitError, RuntimeError):
    """Estimated quadrature error exceeds the requested tolerance."""


class DimensionMismatch(ToolkitError, ValueError):
    """Operands have incompatible dimensions."""


class InvalidBloch(ToolkitError, ValueError):
    """Bloch parameters outside the representable full-rank domain."""


class InvalidParameter(ToolkitError, ValueError):
    """Channel or drive parameter outside its allowed range."""


class UnsupportedForDrive(ToolkitError, TypeError):
    """Operation not defined for this kind of drive."""


class DomainError(ToolkitError, ValueError):
    """Arguments left the validity region of a bound."""


class NegativeDivergence(ToolkitError, ArithmeticError):
    """Divergence evaluated to a negative value beyond roundoff tolerance."""


class ChannelMismatch(ToolkitError, ValueError):
    """Closed-form expression requested for the wrong channel kind."""


class BoundViolation(ToolkitError, ArithmeticError):
    """A proven inequality failed numerically; results are not trustworthy."""


class ConfigError(ToolkitError, ValueError):
    """Scenario configuration is missing keys or holds invalid values."""
