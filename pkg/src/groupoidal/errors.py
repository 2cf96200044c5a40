"""Exception hierarchy shared by every module.

Each error carries a short ``kind`` string and a ``details`` mapping so the
command line front-end can emit a machine-readable error object.
"""

from __future__ import annotations

import os

DEFAULT_BUDGET = 10**6


def default_budget() -> int:
    """Node budget for searches, overridable through ``GROUPOIDAL_BUDGET``."""
    raw = os.environ.get("GROUPOIDAL_BUDGET")
    if raw is None or raw.strip() == "":
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        return DEFAULT_BUDGET
    return value if value > 0 else DEFAULT_BUDGET


class GroupoidalError(Exception):
    """Base class; ``details`` must be JSON serializable."""

    exit_code = 1

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    @property
    def kind(self) -> str:
        return type(self).__name__

    def to_json(self) -> dict:
        return {"error": {"type": self.kind, "message": self.message, "details": self.details}}


class Violation:
    """One failed axiom, naming the offending ids."""

    __slots__ = ("kind", "ids")

    def __init__(self, kind: str, *ids: str):
        self.kind = kind
        self.ids = tuple(ids)

    def __eq__(self, other):
        return isinstance(other, Violation) and (self.kind, self.ids) == (other.kind, other.ids)

    def __hash__(self):
        return hash((self.kind, self.ids))

    def __repr__(self):
        return f"{self.kind}({', '.join(self.ids)})"

    def to_json(self) -> dict:
        return {"kind": self.kind, "ids": list(self.ids)}


class ValidationError(GroupoidalError):
    """Raised with the full list of violated axioms."""

    def __init__(self, message: str, violations):
        self.violations = list(violations)
        super().__init__(message, violations=[v.to_json() for v in self.violations])

    def kinds(self) -> set:
        return {v.kind for v in self.violations}


class SearchBudgetExceeded(GroupoidalError):
    exit_code = 2

    def __init__(self, budget: int, what: str = "search"):
        super().__init__(f"{what} exceeded the node budget of {budget}", budget=budget)
        self.budget = budget


class SchemaError(GroupoidalError):
    """Malformed input document or unreadable file."""

    exit_code = 3


class BadAction(GroupoidalError):
    pass


class NoSuchObject(GroupoidalError):
    pass


class SourceTargetMismatch(GroupoidalError):
    pass


class GroupoidMismatch(GroupoidalError):
    pass


class NotInvertible(GroupoidalError):
    pass


class NotInvariant(GroupoidalError):
    pass


class NotACover(GroupoidalError):
    pass


class CocycleViolation(GroupoidalError):
    pass


class NotTransitive(GroupoidalError):
    pass


class NotPrincipal(GroupoidalError):
    pass


class NotLiftable(GroupoidalError):
    pass


class NotEquivariant(GroupoidalError):
    pass


class CoverMismatch(GroupoidalError):
    pass


class SearchTooLarge(GroupoidalError):
    pass


class NotFreeRegular(GroupoidalError):
    pass


class NotCovering(GroupoidalError):
    pass


class NotConnected(GroupoidalError):
    pass


class UnsupportedCoefficients(GroupoidalError):
    pass


class NotExactInput(GroupoidalError):
    pass


class AlgebraMismatch(GroupoidalError):
    pass


class NotEquivalent(GroupoidalError):
    pass
