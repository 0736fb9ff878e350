"""Verdicts returned by bounded verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class Status(str, Enum):
    PROVEN = "ProvenStructurally"
    VERIFIED = "VerifiedUpTo"
    COUNTEREXAMPLE = "CounterexampleFound"
    PARTIAL = "PartialBudgetExceeded"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check that is structural or bounded, never a theorem.

    ``bound`` is the size limit the search ran to; ``witness`` carries the
    counterexample when one was found.
    """

    status: Status
    bound: int | None = None
    witness: Any = None
    detail: str = ""
    checked: int = field(default=0, compare=False)

    @property
    def ok(self) -> bool:
        return self.status in (Status.PROVEN, Status.VERIFIED)

    def to_json(self) -> dict:
        out = {"status": self.status.value}
        if self.bound is not None:
            out["bound"] = self.bound
        if self.detail:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        return out

    def __str__(self) -> str:
        s = self.status.value
        if self.status is Status.VERIFIED:
            s += f"({self.bound})"
        if self.detail:
            s += f": {self.detail}"
        return s


def proven(detail: str = "") -> Verdict:
    return Verdict(Status.PROVEN, detail=detail)


def verified(bound: int, detail: str = "", checked: int = 0) -> Verdict:
    return Verdict(Status.VERIFIED, bound=bound, detail=detail, checked=checked)


def counterexample(witness: Any, bound: int | None = None, detail: str = "") -> Verdict:
    return Verdict(Status.COUNTEREXAMPLE, bound=bound, witness=witness, detail=detail)


def partial(bound: int, detail: str) -> Verdict:
    return Verdict(Status.PARTIAL, bound=bound, detail=detail)


def _jsonable(x):
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (frozenset, set)):
        return sorted(_jsonable(v) for v in x)
    return x
