"""
Exceptions raised by cyquiver.

Every exception carries the process exit code the command-line surface
reports for it, so library callers and the CLI agree on failure classes.
"""


class CyQuiverError(Exception):
    """Base class for all cyquiver failures."""

    exit_code = 1


class QuiverError(CyQuiverError):
    """Raised when a quiver or an Ext table violates the construction's hypotheses."""

    exit_code = 2

    def __init__(self, message, violations=None):
        super().__init__(message)
        self.violations = list(violations or [])


class ForbiddenCycleError(QuiverError):
    """Raised when an even-d quiver has a 2-cycle of middle-degree arrows."""

    def __init__(self, first, second):
        super().__init__(
            f"forbidden 2-cycle: arrows {first!r} and {second!r} both have the middle degree"
        )
        self.arrows = (first, second)


class WordError(CyQuiverError, ValueError):
    """Raised for non-composable or non-closed words."""

    exit_code = 3


class ExpressionError(CyQuiverError, ValueError):
    """Raised when a potential or path expression cannot be parsed."""

    exit_code = 3

    def __init__(self, message, location=None):
        if location is not None:
            message = f"{message} (at column {location + 1})"
        super().__init__(message)
        self.location = location


class DegreeError(CyQuiverError, ValueError):
    """Raised when a series has the wrong degree for the requested operation."""

    exit_code = 3


class IncompatibleSpaceError(CyQuiverError, ValueError):
    """Raised when two series live over different coordinate spaces."""

    exit_code = 3


class InadmissiblePotentialError(CyQuiverError):
    """Raised when W_0 cannot be lifted to a potential on the double quiver."""

    exit_code = 4

    def __init__(self, violations):
        super().__init__("inadmissible W_0: " + "; ".join(violations))
        self.violations = list(violations)


class InadmissibleTransformError(CyQuiverError):
    """Raised for gauge transformations that are not grading and vertex preserving or not invertible."""

    exit_code = 5


class ConsistencyError(CyQuiverError, RuntimeError):
    """Raised when an internal algebraic self-check fails."""

    exit_code = 1
