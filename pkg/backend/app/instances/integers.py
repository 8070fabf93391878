"""Additive integers with the discrete topology (demo only).

This instance is a group, so every element is a unit: it violates the
standing reducedness assumption and is excluded from the law suites. It
exists to show that k + (-k) = 0 for every k, while the dissociated sum
over all k and -k has unbounded partial sums.
"""

from __future__ import annotations

from app.monoid.base import TopologicalMonoid
from app.monoid.errors import ElementParseError
from app.monoid.types import SearchBound
from app.topology.types import DivergenceWitness, WitnessKind


class IntegersDemo(TopologicalMonoid[int]):
    kind = "integers-demo"
    reduced = False
    discrete = True

    @property
    def identity(self) -> int:
        return 0

    def owns(self, x: object) -> bool:
        return isinstance(x, int) and not isinstance(x, bool)

    def contains(self, x: int) -> bool:
        return self.owns(x)

    def format(self, x: int) -> str:
        return str(x)

    def parse(self, text: str) -> int:
        try:
            return int(text.strip())
        except ValueError as e:
            raise ElementParseError(f"not an integer: {text.strip()!r}", text, 0) from e

    def _combine(self, a: int, b: int) -> int:
        return a + b

    def _divide(self, a: int, b: int) -> int:
        return b - a

    def is_unit(self, x: int) -> bool:
        self.check(x)
        return True

    def neighborhood_contains(self, center: int, level: int, x: int) -> bool:
        return x == center

    def divergence_witness(self, stream, params) -> DivergenceWitness | None:
        entries = stream.take(params.depth)
        late = [e for e in entries[len(entries) // 2 :] if e.factor != 0]
        if not late:
            return None
        values = [stream.value(e) for e in entries]
        return DivergenceWitness(
            WitnessKind.UNBOUNDED,
            "partial sums unbounded: non-zero factors keep appearing",
            {
                "max_partial": sum(v for v in values if v > 0),
                "min_partial": sum(v for v in values if v < 0),
                "depth": len(entries),
            },
        )

    def window_elements(self, bound: SearchBound) -> tuple[int, ...]:
        return tuple(k for n in range(1, bound.degree + 1) for k in (n, -n))
