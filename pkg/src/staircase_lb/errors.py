"""Exception hierarchy.

Each top-level class carries the process exit code the CLI maps it to.
"""


class StaircaseError(Exception):
    exit_code = 1


class ValidationError(StaircaseError, ValueError):
    """Invalid input: bad parameters, malformed files, broken invariants."""

    exit_code = 1


class GraphValidationError(ValidationError):
    pass


class DisconnectedGraphError(GraphValidationError):
    pass


class SelfLoopError(GraphValidationError):
    pass


class DuplicateEdgeError(GraphValidationError):
    pass


class VertexLabelError(GraphValidationError):
    pass


class InfeasibleParametersError(ValidationError):
    pass


class PathSystemError(ValidationError):
    pass


class EmptyRelationError(ValidationError):
    """No pair of labels has positive weight, so the adversary minimum is undefined."""


class SearchConsistencyError(StaircaseError):
    """A solver returned a vertex that is not a local minimum."""

    exit_code = 3


class BudgetExceededError(StaircaseError):
    exit_code = 2


class VerificationError(StaircaseError):
    exit_code = 3
