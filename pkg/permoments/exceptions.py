"""
Error types for permoments.

Every error carries the process exit code the command line reports for it.
"""


class PermomentsError(Exception):
    """Base error for all permoments failures."""

    exit_code = 1

    def __init__(self, message: str, detail: str = ""):
        self.message = message
        self.detail = detail
        super().__init__(self.message)


class ResourceBudgetError(PermomentsError):
    """A configured resource guard was exceeded."""

    exit_code = 3

    def __init__(self, guard: str, requested: int, limit: int, detail: str = ""):
        self.guard = guard
        self.requested = requested
        self.limit = limit
        super().__init__(
            f"{guard} exceeded: requested {requested}, limit {limit}", detail
        )


class UnsupportedParameterError(PermomentsError):
    """No supported method exists for the requested parameters."""

    exit_code = 4


class ValidityRangeError(UnsupportedParameterError):
    """Parameters fall outside the hypothesis of the formula being applied."""

    def __init__(self, hypothesis: str, detail: str = ""):
        self.hypothesis = hypothesis
        super().__init__(f"requires {hypothesis}", detail)


class OutOfBranchError(UnsupportedParameterError):
    """Large-deviation argument lies outside the computed branch."""


class ShapeMismatchError(PermomentsError, ValueError):
    """Partition sizes disagree, or a shape does not tile the grid."""

    exit_code = 2
