"""Exception taxonomy.

Every error raised by this package derives from LogFanoError, so callers can
catch one type at the CLI boundary.  Input problems (bad strings, malformed
geometry declarations) raise ValidationError or ConfigurationError; honest
mathematical obstructions (a divisor that is not pseudo-effective, a threshold
that leaves the rational numbers) get their own types so tests can pin them.
"""


class LogFanoError(Exception):
    """Base class for all package errors."""


class ValidationError(LogFanoError):
    """Malformed user input: bad rational string, out-of-range parameter."""


class ConfigurationError(LogFanoError):
    """A surface or scenario declaration is internally inconsistent."""


class NotPseudoEffectiveError(LogFanoError):
    """Zariski decomposition requested for a non-pseudo-effective divisor."""


class UnsupportedConfigurationError(LogFanoError):
    """The computation leaves exact rational arithmetic (irrational threshold)."""


class RegimeUnstableError(LogFanoError):
    """Sampled chamber structures disagree, so no single rational function fits."""


class ReconstructionError(LogFanoError):
    """Rational-function reconstruction failed to match a verification sample."""


class PoleError(LogFanoError):
    """Series expansion requested at a pole."""


class DegeneracyError(LogFanoError):
    """A polytope degenerated to lower dimension."""


class InternalComputationError(LogFanoError):
    """An invariant the algorithm guarantees failed to hold; indicates a bug."""
