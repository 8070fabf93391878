"""Shared types for bounded decisions over monoid instances."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class Verdict(str, Enum):
    """Outcome of a bounded search."""

    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


class Outcome(str, Enum):
    """Verdict of an executable check."""

    PASS = "PASS"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class SearchBound:
    """Finite search window.

    window bounds the coordinate / generator indices considered, degree bounds
    exponent totals of enumerated elements.
    """

    window: int = 12
    degree: int = 4

    def __post_init__(self) -> None:
        if self.window < 1:
            raise ValueError("window must be positive")
        if self.degree < 1:
            raise ValueError("degree must be positive")


@dataclass(frozen=True)
class BoundedVerdict:
    """Result of a bounded predicate (irreducible, prime, span membership).

    status=No always carries a witness that can be re-checked by direct
    multiplication; status=Unknown means the bound ran out first.
    """

    status: Verdict
    bound: SearchBound
    witness: tuple[Any, ...] | None = None
    note: str = ""

    def __post_init__(self) -> None:
        if self.status is Verdict.NO and self.witness is None:
            raise ValueError("a No verdict needs a witness")

    @property
    def decided(self) -> bool:
        return self.status is not Verdict.UNKNOWN

    @classmethod
    def yes(cls, bound: SearchBound, witness: tuple[Any, ...] | None = None, note: str = "") -> "BoundedVerdict":
        return cls(Verdict.YES, bound, witness, note)

    @classmethod
    def no(cls, bound: SearchBound, witness: tuple[Any, ...], note: str = "") -> "BoundedVerdict":
        return cls(Verdict.NO, bound, witness, note)

    @classmethod
    def unknown(cls, bound: SearchBound, note: str = "") -> "BoundedVerdict":
        return cls(Verdict.UNKNOWN, bound, None, note)


@dataclass(frozen=True)
class DivisorSearch:
    """Candidate divisors of an element inside a search window.

    exhaustive is True when the candidates are provably all divisors, so an
    empty split search decides irreducibility exactly.
    """

    candidates: tuple[Any, ...] = field(default_factory=tuple)
    exhaustive: bool = False
