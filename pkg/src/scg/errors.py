"""Exception types shared across the package."""


class SCGError(Exception):
    """Base class for all library errors."""


class InvalidVertexError(SCGError):
    """A vertex id is outside the graph's 1..n range."""


class SelfLoopError(SCGError):
    """An operation tried to create or query a self-loop."""


class EdgeAbsentError(SCGError):
    """An operation requires an edge that is not present."""


class GraphParseError(SCGError):
    """The graph or script text input is malformed."""


class NotChordalError(SCGError):
    """The graph is not chordal."""


class NotStronglyChordalError(SCGError):
    """The graph is not strongly chordal."""


class PreconditionViolatedError(SCGError):
    """A structural precondition of an update procedure does not hold."""


class BudgetExceededError(SCGError):
    """An exhaustive oracle was invoked beyond its instance-size budget."""


class InvariantError(SCGError):
    """An internal coherence invariant failed after an accepted operation."""
