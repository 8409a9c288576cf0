"""Operation-count guards for exhaustive enumeration."""

import os

from .errors import GuardExceeded

DEFAULT_LIMIT = 2**24

# The subcode search is pure Python; its node budget is a fixed fraction of the guard.
WEI_BUDGET_SHIFT = 6


def guard_limit():
    value = os.environ.get("RW_GUARD_LIMIT")
    if value is None or value.strip() == "":
        return DEFAULT_LIMIT
    try:
        limit = int(value)
    except ValueError:
        raise ValueError(f"RW_GUARD_LIMIT must be an integer, got {value!r}") from None
    if limit <= 0:
        raise ValueError("RW_GUARD_LIMIT must be positive")
    return limit


def wei_budget():
    return max(1, guard_limit() >> WEI_BUDGET_SHIFT)


def check_guard(what, count, limit=None):
    """Raise GuardExceeded when ``count`` exceeds the active limit."""
    limit = guard_limit() if limit is None else limit
    if count > limit:
        raise GuardExceeded(what, count, limit)
