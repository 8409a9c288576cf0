"""Exception hierarchy shared by every module."""


class RankWeightsError(Exception):
    """Base class for toolkit errors."""


class FieldMismatchError(ValueError, RankWeightsError):
    """Operands live in different fields."""


class GuardExceeded(RankWeightsError):
    """An exhaustive enumeration would exceed the configured operation guard."""

    def __init__(self, what, count, limit):
        self.what = what
        self.count = count
        self.limit = limit
        super().__init__(
            f"refusing to enumerate {what}: {count} operations exceed the guard "
            f"limit {limit} (set RW_GUARD_LIMIT to override)"
        )


class TheoremViolation(RankWeightsError):
    """A theorem check failed. This always indicates an implementation bug."""

    def __init__(self, message, details=None):
        self.details = details or {}
        super().__init__(message)


class ConsistencyError(TheoremViolation):
    """Two independent algorithms for the same quantity disagreed."""
