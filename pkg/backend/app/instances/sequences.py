"""N-valued sequences under pointwise addition, with the prefix topology.

An element is a constant `base` plus a finite perturbation `delta`, which is
exact for every finitely supported sequence and for every eventually constant
one. `PointwiseSequences` is all of N^N; `RestrictedSequences` keeps only the
sequences that are finitely supported or >= 1 everywhere.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations_with_replacement, product

from app.monoid.base import AtomFamily, TopologicalMonoid
from app.monoid.errors import ElementParseError, InvalidInstanceParams
from app.monoid.types import DivisorSearch, SearchBound
from app.topology.types import DivergenceWitness, WitnessKind
from app.utils.parsing import parse_braced_map, parse_count, split_base_delta

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class SequenceElement:
    """g(i) = base + delta(i); delta sorted, without zero entries."""

    base: int = 0
    delta: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        if self.base < 0:
            raise ValueError("base must be non-negative")
        for i, d in self.delta:
            if i < 0 or d == 0 or self.base + d < 0:
                raise ValueError(f"invalid perturbation {d:+d} at coordinate {i}")

    @classmethod
    def of(cls, base: int, delta: dict[int, int]) -> "SequenceElement":
        return cls(base, tuple(sorted((i, d) for i, d in delta.items() if d)))

    def __call__(self, i: int) -> int:
        for j, d in self.delta:
            if j == i:
                return self.base + d
        return self.base

    def as_dict(self) -> dict[int, int]:
        return dict(self.delta)

    @property
    def support_bound(self) -> int:
        """Coordinates from here on all carry the value base."""
        return max((i for i, _ in self.delta), default=-1) + 1


def chi(i: int) -> SequenceElement:
    """Indicator sequence of coordinate i."""
    return SequenceElement(0, ((i, 1),))


ONES = SequenceElement(1, ())


def _pointwise_difference(a: SequenceElement, b: SequenceElement) -> SequenceElement | None:
    """b - a in N^N, or None when some coordinate would be negative."""
    base = b.base - a.base
    if base < 0:
        return None
    delta = b.as_dict()
    for i, d in a.delta:
        delta[i] = delta.get(i, 0) - d
    if any(base + d < 0 for d in delta.values()):
        return None
    return SequenceElement.of(base, delta)


class PointwiseSequences(TopologicalMonoid[SequenceElement]):
    """N^N with U_k(f) = {g : g(i) = f(i) for i < k}.

    Atoms are the indicators chi_i; every product of them with finite
    exponents converges coordinatewise, so arbitrary decimation holds.
    """

    kind = "pointwise"
    monotone = True

    def __init__(self, window: int = 12):
        if window < 1:
            raise InvalidInstanceParams("sequence window must be positive")
        self.window = window

    @property
    def name(self) -> str:
        return f"{self.kind}(window={self.window})"

    @property
    def identity(self) -> SequenceElement:
        return SequenceElement()

    def owns(self, x: object) -> bool:
        return isinstance(x, SequenceElement)

    def contains(self, x: SequenceElement) -> bool:
        return True

    def format(self, x: SequenceElement) -> str:
        delta = ", ".join(f"{i}:{d:+d}" for i, d in x.delta)
        return f"base={x.base}; delta={{{delta}}}"

    def parse(self, text: str) -> SequenceElement:
        parts = split_base_delta(text)
        if parts is None:
            raise ElementParseError("expected 'base=B; delta={...}'", text, 0)
        base_text, delta_text, offset = parts
        base = parse_count(base_text, "base", text, text.find("=") + 1)
        delta: dict[int, int] = {}
        for key, value in parse_braced_map(delta_text, offset, text):
            if not key.isdigit():
                raise ElementParseError(f"coordinate expected, got {key!r}", text, offset)
            delta[int(key)] = value
        try:
            element = SequenceElement.of(base, delta)
        except ValueError as e:
            raise ElementParseError(str(e), text, offset) from e
        if not self.contains(element):
            raise ElementParseError(f"not in the carrier of {self.kind}", text, 0)
        return element

    def _combine(self, a: SequenceElement, b: SequenceElement) -> SequenceElement:
        delta = a.as_dict()
        for i, d in b.delta:
            delta[i] = delta.get(i, 0) + d
        return SequenceElement.of(a.base + b.base, delta)

    def _divide(self, a: SequenceElement, b: SequenceElement) -> SequenceElement | None:
        rest = _pointwise_difference(a, b)
        return rest if rest is not None and self.contains(rest) else None

    def _ambient_divide(self, a: SequenceElement, b: SequenceElement) -> SequenceElement | None:
        return _pointwise_difference(a, b)

    # --- Topology --------------------------------------------------------

    def neighborhood_contains(self, center: SequenceElement, level: int, x: SequenceElement) -> bool:
        return all(center(i) == x(i) for i in range(level))

    def escapes_above(self, candidate: SequenceElement, value: SequenceElement) -> bool:
        if value.base > candidate.base:
            return True
        coords = {i for i, _ in value.delta} | {i for i, _ in candidate.delta}
        return any(value(i) > candidate(i) for i in coords)

    def divergence_witness(self, stream, params) -> DivergenceWitness | None:
        entries = stream.take(params.depth)
        threshold = params.repetition_threshold
        everywhere = sum(stream.value(e).base for e in entries)
        if everywhere > threshold:
            return DivergenceWitness(
                WitnessKind.UNBOUNDED,
                f"{everywhere} factors raise every coordinate; coordinates grow without bound",
                {"count": everywhere, "threshold": threshold},
            )
        totals: dict[int, int] = {}
        for entry in entries:
            for i, d in stream.value(entry).delta:
                totals[i] = totals.get(i, 0) + d
        hot = [i for i, t in sorted(totals.items()) if t > threshold]
        if hot:
            return DivergenceWitness(
                WitnessKind.UNBOUNDED,
                f"coordinate {hot[0]} reaches {totals[hot[0]]} within depth {params.depth}",
                {"coordinate": hot[0], "value": totals[hot[0]], "threshold": threshold},
            )
        return None

    def propose_limit(self, stream, params) -> SequenceElement | None:
        ambient = stream.ambient_limit
        if ambient is not None and self.contains(ambient):
            return ambient
        return None

    def coordinatewise_limit_exists(self, stream, dominating: SequenceElement, params) -> bool:
        """Partial products dominated by a limit converge coordinatewise in N^N."""
        total = self.identity
        for entry in stream.take(params.depth):
            total = self._combine(total, stream.value(entry))
        if self.escapes_above(dominating, total):
            return False
        return all(total(i) <= dominating(i) for i in range(self.window))

    # --- Windows ---------------------------------------------------------

    def size(self, x: SequenceElement) -> int | None:
        if x.base:
            return None
        return sum(d for _, d in x.delta)

    def weight(self, x: SequenceElement) -> int:
        if x.base == 0:
            return sum(d for _, d in x.delta)
        return x.base + sum(d for _, d in x.delta if d > 0)

    def _finitely_supported(self, coords: int, degree: int) -> list[SequenceElement]:
        found: list[SequenceElement] = []
        for total in range(1, degree + 1):
            for combo in combinations_with_replacement(range(coords), total):
                delta: dict[int, int] = {}
                for i in combo:
                    delta[i] = delta.get(i, 0) + 1
                found.append(SequenceElement.of(0, delta))
        return found

    def window_elements(self, bound: SearchBound) -> tuple[SequenceElement, ...]:
        coords = min(self.window, bound.window)
        elements = self._finitely_supported(coords, bound.degree)
        elements.append(ONES)
        elements.extend(
            self._combine(ONES, e) for e in self._finitely_supported(coords, bound.degree - 1)
        )
        elements.extend(self._extra_window(coords))
        return tuple(elements)

    def _extra_window(self, coords: int) -> list[SequenceElement]:
        # f - chi_i lies in N^N.
        return [SequenceElement(1, ((i, -1),)) for i in range(coords)]

    def divisor_candidates(self, x: SequenceElement, bound: SearchBound) -> DivisorSearch:
        if x.base == 0:
            return DivisorSearch(candidates=self._below(x), exhaustive=True)
        coords = range(min(self.window, bound.window))
        candidates = [chi(i) for i in coords if self._divide(chi(i), x) is not None]
        candidates.extend(
            a for a in self.window_elements(bound)
            if a != x and a not in candidates and self._divide(a, x) is not None
        )
        return DivisorSearch(candidates=tuple(candidates), exhaustive=False)

    def _below(self, x: SequenceElement) -> tuple[SequenceElement, ...]:
        """Finitely supported a with a <= x pointwise (x finitely supported)."""
        coords = [i for i, _ in x.delta]
        ranges = [range(x(i) + 1) for i in coords]
        return tuple(
            SequenceElement.of(0, dict(zip(coords, values)))
            for values in product(*ranges)
            if any(values) and SequenceElement.of(0, dict(zip(coords, values))) != x
        )

    def atom_candidates(self, bound: SearchBound) -> tuple[SequenceElement, ...]:
        return tuple(chi(i) for i in range(min(self.window, bound.window)))

    def atom_family(self) -> AtomFamily[SequenceElement]:
        return AtomFamily(
            label="chi",
            member=chi,
            index_of=lambda a: a.delta[0][0]
            if a.base == 0 and len(a.delta) == 1 and a.delta[0][1] == 1
            else None,
            ones_limit=ONES,
        )

    def atom_label(self, a: SequenceElement) -> str:
        if a.base == 0 and len(a.delta) == 1 and a.delta[0][1] == 1:
            return f"chi{a.delta[0][0]}"
        if a == ONES:
            return "f"
        return self.format(a)

    def describe(self) -> dict[str, object]:
        return {"kind": self.kind, "window": self.window}


class RestrictedSequences(PointwiseSequences):
    """Sequences that are finitely supported or >= 1 everywhere.

    f = (1, 1, ...) is the product of all chi_i, yet chi_0 does not divide f
    (f - chi_0 vanishes at 0 and is not finitely supported). The product of
    chi_i over i >= 1 leaves the carrier, so finite decimation fails.
    """

    kind = "restricted"
    allows_arbitrary_decimation = False

    def contains(self, x: SequenceElement) -> bool:
        if x.base == 0:
            return True
        return all(x.base + d >= 1 for _, d in x.delta)

    def divergence_witness(self, stream, params) -> DivergenceWitness | None:
        ambient = stream.ambient_limit
        if ambient is not None and not self.contains(ambient):
            zero = next(i for i, d in ambient.delta if ambient.base + d == 0)
            return DivergenceWitness(
                WitnessKind.OUTSIDE_CARRIER,
                f"pointwise limit {self.format(ambient)} is outside the carrier",
                {"limit": self.format(ambient), "zero_at": zero},
            )
        return super().divergence_witness(stream, params)

    def coordinatewise_limit_exists(self, stream, dominating, params) -> bool:
        return False

    def _extra_window(self, coords: int) -> list[SequenceElement]:
        return []

    def divisor_candidates(self, x: SequenceElement, bound: SearchBound) -> DivisorSearch:
        if x.base == 1:
            # Divisors are a <= x - 1 (finitely supported) or x - a finitely supported.
            coords = [i for i, _ in x.delta]
            lows = [range(x(i)) for i in coords]
            found: list[SequenceElement] = []
            for values in product(*lows):
                if any(values):
                    found.append(SequenceElement.of(0, dict(zip(coords, values))))
            for values in product(*[range(x(i)) for i in coords]):
                cofactor = SequenceElement.of(0, dict(zip(coords, values)))
                if cofactor != self.identity:
                    found.append(SequenceElement.of(1, {i: x(i) - 1 - v for i, v in zip(coords, values)}))
            found = [a for a in dict.fromkeys(found) if a != x and self._divide(a, x) is not None]
            return DivisorSearch(candidates=tuple(found), exhaustive=True)
        return super().divisor_candidates(x, bound)

    def atom_candidates(self, bound: SearchBound) -> tuple[SequenceElement, ...]:
        return super().atom_candidates(bound) + (ONES,)
