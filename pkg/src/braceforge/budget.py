"""Search budget control.

Every enumeration that could blow up checks its candidate-space size against
a budget before starting.  The default can be overridden with the
BRACEFORGE_BUDGET environment variable or per call.
"""

from __future__ import annotations

import os

from .errors import SearchBudgetExceeded

DEFAULT_BUDGET = 2_000_000

_ENV_VAR = "BRACEFORGE_BUDGET"


def get_budget(override: int | None = None) -> int:
    if override is not None:
        return int(override)
    raw = os.environ.get(_ENV_VAR)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise SearchBudgetExceeded(f"bad {_ENV_VAR} value {raw!r}", 0, 0) from exc
    return value


def guard(size: int, what: str, budget: int | None = None, partial_count: int = 0) -> int:
    """Raise SearchBudgetExceeded when size exceeds the effective budget."""
    limit = get_budget(budget)
    if size > limit:
        raise SearchBudgetExceeded(what, size, limit, partial_count)
    return limit
