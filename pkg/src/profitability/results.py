"""Result types shared across the metric and ordering modules."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Tuple

__all__ = ["Verdict", "Relation", "ComparabilityResult", "DomainError", "BoundaryWarning"]


class DomainError(ValueError):
    """A project lies outside the natural domain of a metric."""


class BoundaryWarning(UserWarning):
    """A sign decision was taken on a value within tolerance of zero."""


class Verdict(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNDETERMINED = "undetermined"

    @classmethod
    def of(cls, flag: bool) -> "Verdict":
        return cls.TRUE if flag else cls.FALSE

    def __and__(self, other: "Verdict") -> "Verdict":
        if Verdict.FALSE in (self, other):
            return Verdict.FALSE
        if Verdict.UNDETERMINED in (self, other):
            return Verdict.UNDETERMINED
        return Verdict.TRUE


class Relation(enum.Enum):
    GREATER_STRICT = "greater_strict"
    GREATER_EQ = "greater_eq"
    LESS_STRICT = "less_strict"
    LESS_EQ = "less_eq"
    EQUIVALENT = "equivalent"
    INCOMPARABLE = "incomparable"
    UNDETERMINED = "undetermined"
    NOT_APPLICABLE = "not_applicable"

    def flipped(self) -> "Relation":
        return _FLIP.get(self, self)

    @property
    def at_least(self) -> bool:
        """``x`` is at least as profitable as ``y``."""
        return self in (Relation.GREATER_STRICT, Relation.GREATER_EQ, Relation.EQUIVALENT)

    @property
    def at_most(self) -> bool:
        return self in (Relation.LESS_STRICT, Relation.LESS_EQ, Relation.EQUIVALENT)


_FLIP = {
    Relation.GREATER_STRICT: Relation.LESS_STRICT,
    Relation.LESS_STRICT: Relation.GREATER_STRICT,
    Relation.GREATER_EQ: Relation.LESS_EQ,
    Relation.LESS_EQ: Relation.GREATER_EQ,
}


@dataclass(frozen=True)
class ComparabilityResult:
    """Outcome of comparing ``x`` with ``y`` under a scenario set.

    ``accepts_x_only`` names a scenario under which ``x`` is profitable and
    ``y`` is not; ``accepts_y_only`` the reverse.  Both are present exactly
    when the projects are incomparable.
    """

    relation: Relation
    accepts_x_only: Optional[str] = None
    accepts_y_only: Optional[str] = None
    exact: bool = True

    @property
    def witnesses(self) -> Tuple[Optional[str], Optional[str]]:
        return self.accepts_x_only, self.accepts_y_only

    def flipped(self) -> "ComparabilityResult":
        return ComparabilityResult(self.relation.flipped(), self.accepts_y_only, self.accepts_x_only, self.exact)

    @classmethod
    def from_inclusions(
        cls,
        x_ge_y: Verdict,
        y_ge_x: Verdict,
        accepts_x_only: Optional[str],
        accepts_y_only: Optional[str],
        exact: bool = True,
    ) -> "ComparabilityResult":
        T, F = Verdict.TRUE, Verdict.FALSE
        if x_ge_y is T and y_ge_x is T:
            rel = Relation.EQUIVALENT
        elif x_ge_y is T and y_ge_x is F:
            rel = Relation.GREATER_STRICT
        elif x_ge_y is F and y_ge_x is T:
            rel = Relation.LESS_STRICT
        elif x_ge_y is F and y_ge_x is F:
            rel = Relation.INCOMPARABLE
        elif x_ge_y is T:
            rel = Relation.GREATER_EQ
        elif y_ge_x is T:
            rel = Relation.LESS_EQ
        else:
            rel = Relation.UNDETERMINED
        keep_x = accepts_x_only if rel in (Relation.GREATER_STRICT, Relation.INCOMPARABLE) else None
        keep_y = accepts_y_only if rel in (Relation.LESS_STRICT, Relation.INCOMPARABLE) else None
        return cls(rel, keep_x, keep_y, exact)
