"""Exception hierarchy shared by every module."""

from __future__ import annotations


class F1Error(Exception):
    """Base class for all errors raised by the package."""


class InputError(F1Error, ValueError):
    """Malformed or inconsistent input data (bad JSON, bad table, ...)."""


class BudgetExceeded(F1Error):
    """An enumeration would exceed its configured budget.

    The ``bound`` attribute names the limit that was hit and ``required``
    the size the enumeration would have needed.
    """

    def __init__(self, what: str, bound: int, required: int | None = None):
        self.what = what
        self.bound = bound
        self.required = required
        msg = f"{what}: enumeration budget {bound} exceeded"
        if required is not None:
            msg += f" (needs {required})"
        super().__init__(msg)


class UnsupportedError(F1Error):
    """The operation is not defined for this class of object."""


class VerificationError(F1Error):
    """An internal cross-check between two independent routes disagreed."""
