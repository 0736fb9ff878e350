"""Default enumeration budget, overridable by F1SCHEMES_BUDGET or at run time."""

from __future__ import annotations

import os

from .errors import InputError

FALLBACK_BUDGET = 1_000_000
ENV_VAR = "F1SCHEMES_BUDGET"
_override: int | None = None


def default_budget() -> int:
    if _override is not None:
        return _override
    raw = os.environ.get(ENV_VAR)
    if raw is None:
        return FALLBACK_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"{ENV_VAR} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise InputError(f"{ENV_VAR} must be positive")
    return value


def set_default_budget(value: int | None) -> None:
    global _override
    if value is not None and value <= 0:
        raise InputError("budget must be positive")
    _override = value


def resolve_budget(budget: int | None) -> int:
    return default_budget() if budget is None else budget
