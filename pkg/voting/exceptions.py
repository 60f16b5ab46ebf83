"""Error hierarchy shared by the engine and the management commands."""


class PowerPolyError(Exception):
    """Base class; `exit_code` is the process status the CLI reports."""
    exit_code = 1


class GameParseError(PowerPolyError, ValueError):
    """Game text or JSON could not be turned into a valid weighted game."""
    exit_code = 2


class InvalidInputError(PowerPolyError, ValueError):
    """Caller input outside an operation's domain."""
    exit_code = 2


class CapacityError(PowerPolyError):
    """A configured size cap was exceeded."""
    exit_code = 3


class NotCompleteError(PowerPolyError):
    """Operation needs a complete game (total desirability order)."""


class NotWeightedError(PowerPolyError):
    """Simple game has no weighted representation."""


class NoFeasibleDesignError(PowerPolyError):
    """Inverse design found no valid game on the quota grid."""


class InvariantViolation(PowerPolyError):
    """Internal consistency check failed; this is a bug, not bad input."""
    exit_code = 4


class DegeneratePolytopeError(InvariantViolation):
    """Polytope is empty, unbounded or not full-dimensional."""

    def __init__(self, message, point=None):
        super().__init__(message)
        # set when the polytope collapsed to a single point
        self.point = point
