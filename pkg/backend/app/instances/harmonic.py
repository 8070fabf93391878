"""Free monoid on e_0, e_1, ... with the topology pulled back along phi.

phi(e_0) = 0 and phi(e_i) = 1/i. Basic neighbourhoods are phi-balls, so
e_n -> e_0 although e_0 is not a limit of any product of the e_i, i >= 1.
Elements with equal phi cannot be separated: the instance is not Hausdorff.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from app.monoid.base import AtomFamily, TopologicalMonoid
from app.monoid.errors import ElementParseError, InvalidInstanceParams
from app.monoid.types import DivisorSearch, SearchBound
from app.topology.divergence import growth_floor_witness
from app.topology.types import DivergenceWitness
from app.utils.parsing import parse_braced_map
from app.utils.rationals import dyadic_ball_contains


@dataclass(frozen=True, order=True)
class HarmonicElement:
    """Finite multiset over basis indices: sorted (index, multiplicity) pairs."""

    counts: tuple[tuple[int, int], ...] = ()

    @classmethod
    def of(cls, mapping: dict[int, int]) -> "HarmonicElement":
        return cls(tuple(sorted((i, m) for i, m in mapping.items() if m)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    @property
    def total(self) -> int:
        return sum(m for _, m in self.counts)


def harmonic_phi(f: HarmonicElement) -> Fraction:
    """phi(f) = sum of multiplicity(i) / i over i >= 1; e_0 contributes 0."""
    return sum((Fraction(m, i) for i, m in f.counts if i > 0), Fraction(0))


class HarmonicMonoid(TopologicalMonoid[HarmonicElement]):
    kind = "harmonic"
    monotone = True
    hausdorff = False

    def __init__(self, window: int = 12):
        if window < 1:
            raise InvalidInstanceParams("harmonic window must be positive")
        self.window = window

    @property
    def name(self) -> str:
        return f"harmonic(window={self.window})"

    @property
    def identity(self) -> HarmonicElement:
        return HarmonicElement()

    def basis(self, i: int) -> HarmonicElement:
        if i < 0:
            raise IndexError("basis index must be non-negative")
        return HarmonicElement(((i, 1),))

    def owns(self, x: object) -> bool:
        return isinstance(x, HarmonicElement)

    def contains(self, x: HarmonicElement) -> bool:
        return True

    def format(self, x: HarmonicElement) -> str:
        return "[" + ", ".join(f"{i}:{m}" for i, m in x.counts) + "]"

    def parse(self, text: str) -> HarmonicElement:
        counts: dict[int, int] = {}
        for key, value in parse_braced_map(text):
            if not key.isdigit():
                raise ElementParseError(f"basis index expected, got {key!r}", text, text.find(key))
            if value < 0:
                raise ElementParseError("multiplicities are non-negative", text, text.find(key))
            counts[int(key)] = value
        return HarmonicElement.of(counts)

    def _combine(self, a: HarmonicElement, b: HarmonicElement) -> HarmonicElement:
        merged = a.as_dict()
        for i, m in b.counts:
            merged[i] = merged.get(i, 0) + m
        return HarmonicElement.of(merged)

    def _divide(self, a: HarmonicElement, b: HarmonicElement) -> HarmonicElement | None:
        rest = b.as_dict()
        for i, m in a.counts:
            if rest.get(i, 0) < m:
                return None
            rest[i] -= m
        return HarmonicElement.of(rest)

    def neighborhood_contains(self, center: HarmonicElement, level: int, x: HarmonicElement) -> bool:
        return dyadic_ball_contains(harmonic_phi(center), level, harmonic_phi(x))

    def escapes_above(self, candidate: HarmonicElement, value: HarmonicElement) -> bool:
        return harmonic_phi(value) > harmonic_phi(candidate)

    def order_value(self, x: HarmonicElement) -> Fraction:
        return harmonic_phi(x)

    def divergence_witness(self, stream, params) -> DivergenceWitness | None:
        values = [harmonic_phi(stream.value(e)) for e in stream.take(params.depth)]
        return growth_floor_witness(stream, values)

    def closure_witness(self, level: int) -> int:
        """Least n with e_n in U_level(e_0): 1/n < 2^-level."""
        return (1 << level) + 1

    def size(self, x: HarmonicElement) -> int:
        return x.total

    def window_elements(self, bound: SearchBound) -> tuple[HarmonicElement, ...]:
        indices = range(min(self.window, bound.window) + 1)
        elements: list[HarmonicElement] = []
        for total in range(1, bound.degree + 1):
            for combo in combinations_with_replacement(indices, total):
                counts: dict[int, int] = {}
                for i in combo:
                    counts[i] = counts.get(i, 0) + 1
                elements.append(HarmonicElement.of(counts))
        return tuple(elements)

    def divisor_candidates(self, x: HarmonicElement, bound: SearchBound) -> DivisorSearch:
        divisors = [HarmonicElement()]
        for i, m in x.counts:
            divisors = [
                self._combine(d, HarmonicElement(((i, k),))) if k else d
                for d in divisors
                for k in range(m + 1)
            ]
        proper = tuple(d for d in divisors if d != x and d.counts)
        return DivisorSearch(candidates=proper, exhaustive=True)

    def atom_candidates(self, bound: SearchBound) -> tuple[HarmonicElement, ...]:
        return tuple(self.basis(i) for i in range(min(self.window, bound.window) + 1))

    def atom_family(self) -> AtomFamily[HarmonicElement]:
        # Sum of 1/i diverges, so the all-ones product has no ambient limit.
        return AtomFamily(
            label="e",
            member=lambda i: self.basis(i + 1),
            index_of=lambda a: a.counts[0][0] - 1
            if len(a.counts) == 1 and a.counts[0][1] == 1 and a.counts[0][0] > 0
            else None,
            ones_limit=None,
        )

    def atom_label(self, a: HarmonicElement) -> str:
        if len(a.counts) == 1 and a.counts[0][1] == 1:
            return f"e{a.counts[0][0]}"
        return self.format(a)

    def describe(self) -> dict[str, object]:
        return {"kind": self.kind, "window": self.window}
