"""Exception types shared across the package."""


class QuasilangError(Exception):
    """Base class for all package-specific errors."""


class ValidationError(QuasilangError):
    """Input data violates a structural invariant (bad alphabet, non-witness, ...)."""


class PreconditionError(QuasilangError):
    """A documented precondition of an operation does not hold."""


class NoWitnessError(QuasilangError):
    """The requested order relation does not hold, so no witness exists."""


class AmbiguousExpressionError(QuasilangError):
    """A language expression failed the unambiguity certificate.

    Closed generating functions are only emitted for certified expressions;
    callers should fall back to truncated series from the automaton.
    """


class UnsupportedGroupError(QuasilangError):
    """No built-in character table construction applies to this group."""
