"""Free commutative monoid on finitely many generators (discrete topology)."""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations_with_replacement

from app.monoid.base import TopologicalMonoid
from app.monoid.errors import ElementParseError, InvalidInstanceParams
from app.monoid.types import DivisorSearch, SearchBound
from app.topology.types import DivergenceWitness, WitnessKind

_DEFAULT_NAMES = ("x", "y", "z", "w")
_FACTOR = re.compile(r"\s*([A-Za-z_]\w*)\s*(?:\^\s*(\d+))?\s*")


@dataclass(frozen=True, order=True)
class FreeElement:
    """Sparse exponent vector: sorted (generator, exponent) pairs, exponents >= 1."""

    exponents: tuple[tuple[int, int], ...] = ()

    @classmethod
    def of(cls, mapping: dict[int, int]) -> "FreeElement":
        return cls(tuple(sorted((g, e) for g, e in mapping.items() if e)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.exponents)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.exponents)


class FreeMonoid(TopologicalMonoid[FreeElement]):
    """N^n with componentwise addition, written multiplicatively."""

    kind = "free"
    discrete = True

    def __init__(self, gens: int = 2, names: tuple[str, ...] | None = None):
        if gens < 1:
            raise InvalidInstanceParams("free monoid needs at least one generator")
        if names is None:
            names = _DEFAULT_NAMES[:gens] if gens <= len(_DEFAULT_NAMES) else tuple(
                f"x{i + 1}" for i in range(gens)
            )
        if len(names) != gens or len(set(names)) != gens:
            raise InvalidInstanceParams("generator names must be distinct, one per generator")
        self.gens = gens
        self.names = tuple(names)
        self._lookup = {name: i for i, name in enumerate(self.names)}
        # x1, x2, ... always name the generators as well.
        for i in range(gens):
            self._lookup.setdefault(f"x{i + 1}", i)

    @property
    def name(self) -> str:
        return f"free(n={self.gens})"

    @property
    def identity(self) -> FreeElement:
        return FreeElement()

    def generator(self, i: int) -> FreeElement:
        if not 0 <= i < self.gens:
            raise IndexError(f"generator {i} out of range")
        return FreeElement(((i, 1),))

    def owns(self, x: object) -> bool:
        return isinstance(x, FreeElement) and all(0 <= g < self.gens for g, _ in x.exponents)

    def contains(self, x: FreeElement) -> bool:
        return self.owns(x)

    def format(self, x: FreeElement) -> str:
        if not x.exponents:
            return "1"
        return "*".join(
            self.names[g] if e == 1 else f"{self.names[g]}^{e}" for g, e in x.exponents
        )

    def parse(self, text: str) -> FreeElement:
        stripped = text.strip()
        if stripped == "1":
            return self.identity
        exponents: dict[int, int] = {}
        position = 0
        for chunk in text.split("*"):
            match = _FACTOR.fullmatch(chunk)
            if match is None or match.group(1) not in self._lookup:
                raise ElementParseError(f"unknown factor {chunk.strip()!r}", text, position)
            g = self._lookup[match.group(1)]
            exponents[g] = exponents.get(g, 0) + int(match.group(2) or 1)
            position += len(chunk) + 1
        return FreeElement.of(exponents)

    def _combine(self, a: FreeElement, b: FreeElement) -> FreeElement:
        merged = a.as_dict()
        for g, e in b.exponents:
            merged[g] = merged.get(g, 0) + e
        return FreeElement.of(merged)

    def _divide(self, a: FreeElement, b: FreeElement) -> FreeElement | None:
        rest = b.as_dict()
        for g, e in a.exponents:
            if rest.get(g, 0) < e:
                return None
            rest[g] -= e
        return FreeElement.of(rest)

    def neighborhood_contains(self, center: FreeElement, level: int, x: FreeElement) -> bool:
        return x == center

    def escapes_above(self, candidate: FreeElement, value: FreeElement) -> bool:
        return self._divide(value, candidate) is None

    def divergence_witness(self, stream, params) -> DivergenceWitness | None:
        entries = stream.take(params.depth)
        if not entries:
            return None
        return DivergenceWitness(
            WitnessKind.UNBOUNDED,
            "discrete topology: infinitely many non-identity factors",
            {"degree_at_depth": sum(e.factor.degree * e.multiplicity for e in entries)},
        )

    def size(self, x: FreeElement) -> int:
        return x.degree

    def window_elements(self, bound: SearchBound) -> tuple[FreeElement, ...]:
        gens = range(min(self.gens, bound.window))
        elements: list[FreeElement] = []
        for total in range(1, bound.degree + 1):
            for combo in combinations_with_replacement(gens, total):
                counts: dict[int, int] = {}
                for g in combo:
                    counts[g] = counts.get(g, 0) + 1
                elements.append(FreeElement.of(counts))
        return tuple(elements)

    def divisor_candidates(self, x: FreeElement, bound: SearchBound) -> DivisorSearch:
        divisors = [FreeElement()]
        for g, e in x.exponents:
            divisors = [
                self._combine(d, FreeElement(((g, k),))) if k else d
                for d in divisors
                for k in range(e + 1)
            ]
        proper = tuple(d for d in divisors if d != x and d.exponents)
        return DivisorSearch(candidates=proper, exhaustive=True)

    def atom_candidates(self, bound: SearchBound) -> tuple[FreeElement, ...]:
        return tuple(self.generator(i) for i in range(min(self.gens, bound.window)))

    def describe(self) -> dict[str, object]:
        return {"kind": self.kind, "gens": self.gens, "names": list(self.names)}
