"""Exception hierarchy and capacity guards."""

from __future__ import annotations

import os


class HodgelabError(Exception):
    """Base class for all errors raised by this package."""


class InputError(HodgelabError, ValueError):
    """Malformed or inconsistent input (bad spec, mismatched groups, ...)."""


class CapacityError(HodgelabError):
    """An enumeration would exceed the configured size guard."""


class InconsistencyError(HodgelabError):
    """An internal cross-check failed, e.g. a product escaped its target space."""


class NotAProductError(HodgelabError):
    """A subspace of U (x) V is not of the form U' (x) V'."""


GUARD_ENV = "HODGELAB_GUARD"


def capacity_guard(default: int) -> int:
    """Return the enumeration guard, raised (never lowered) by ``$HODGELAB_GUARD``."""
    raw = os.environ.get(GUARD_ENV)
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"{GUARD_ENV} must be an integer, got {raw!r}") from None
    return max(default, value)
