"""Exception types shared across the package."""


class PathKoszulError(Exception):
    """Base class for all package-specific errors."""


class ParseError(PathKoszulError):
    """Malformed graph text or CLI argument."""


class ValidationError(PathKoszulError):
    """Structurally invalid input (self loop, disconnected graph, bad field)."""


class UnknownVertex(PathKoszulError):
    """A vertex id that is not in the graph."""


class EdgeAbsent(PathKoszulError):
    """An (i, j) query on a pair that is not an edge."""


class NotNeighbors(PathKoszulError):
    """A vertex set that is not contained in the required neighbourhood."""


class NotComposable(PathKoszulError):
    """Composition of morphisms whose endpoints do not match."""


class Truncated(PathKoszulError):
    """A query past the materialised degree or homological position range."""


class ZeroModule(PathKoszulError):
    """An operation that requires a nonzero module."""


class NotProjective(PathKoszulError):
    """A complex entry without free-module structure where one is required."""


class HypothesisViolation(PathKoszulError):
    """A construction applied where its standing hypotheses fail."""


class VerificationError(PathKoszulError):
    """An internal consistency check failed; indicates a bug, not bad input."""
