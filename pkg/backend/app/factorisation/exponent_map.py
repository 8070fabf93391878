"""Exponent maps atoms -> N with an optional constant value on an atom family."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Generic, Iterable, TypeVar

from app.topology.types import ConvergenceReport

A = TypeVar("A")


@dataclass(frozen=True)
class ExponentMap(Generic[A]):
    """m(a) = base * [a in family] + delta(a).

    base = 0 gives a finitely supported map; base >= 1 gives the value base
    on every family atom (the all-ones map is base=1), with finitely many
    exceptions recorded in delta. Entries with delta 0 are never stored.
    """

    base: int = 0
    delta: frozenset[tuple[A, int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.base < 0:
            raise ValueError("base must be non-negative")
        if any(d == 0 for _, d in self.delta):
            raise ValueError("zero entries are not stored")

    @classmethod
    def of(cls, mapping: dict[A, int] | Iterable[tuple[A, int]], base: int = 0) -> "ExponentMap[A]":
        items = mapping.items() if isinstance(mapping, dict) else mapping
        merged: dict[A, int] = {}
        for a, d in items:
            merged[a] = merged.get(a, 0) + d
        return cls(base, frozenset((a, d) for a, d in merged.items() if d))

    def as_dict(self) -> dict[A, int]:
        return dict(self.delta)

    @property
    def is_finite(self) -> bool:
        """Finitely supported (no family base)."""
        return self.base == 0

    @property
    def support(self) -> list[A]:
        return [a for a, _ in self.delta]


class ZVerdict(str, Enum):
    IN_Z = "InZ"
    NOT_IN_Z = "NotInZ"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class ZMembershipReport:
    """Whether the atom-power product of a map converges (m in Z(H))."""

    verdict: ZVerdict
    report: ConvergenceReport | None = None
    value: Any = None
    note: str = ""

    @property
    def in_z(self) -> bool:
        return self.verdict is ZVerdict.IN_Z
