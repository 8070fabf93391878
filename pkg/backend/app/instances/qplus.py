"""Non-negative rationals under addition, with dyadic balls."""

from __future__ import annotations

import logging
from fractions import Fraction

from app.monoid.base import TopologicalMonoid
from app.monoid.errors import ElementParseError
from app.monoid.types import DivisorSearch, SearchBound
from app.topology.divergence import growth_floor_witness
from app.topology.types import DivergenceWitness, WitnessKind
from app.utils.rationals import (
    bounded_fraction_in,
    dyadic_ball_contains,
    dyadic_level,
    farey_neighbors,
    simplest_between,
)

logger = logging.getLogger(__name__)


class QPlus(TopologicalMonoid[Fraction]):
    """Q+ = {p/q >= 0}; U_k(x) = {y : |x - y| < 2^-k}.

    Additive and monotone; it has no atoms (x = x/2 + x/2) and does not
    allow arbitrary decimation.
    """

    kind = "qplus"
    monotone = True
    allows_arbitrary_decimation = False

    @property
    def identity(self) -> Fraction:
        return Fraction(0)

    def owns(self, x: object) -> bool:
        return isinstance(x, Fraction) and x >= 0

    def contains(self, x: Fraction) -> bool:
        return self.owns(x)

    def format(self, x: Fraction) -> str:
        return str(x)

    def parse(self, text: str) -> Fraction:
        try:
            value = Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ElementParseError(f"not a fraction: {text.strip()!r}", text, 0) from e
        if value < 0:
            raise ElementParseError("Q+ elements are non-negative", text, 0)
        return value

    def _combine(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def _divide(self, a: Fraction, b: Fraction) -> Fraction | None:
        return b - a if b >= a else None

    def neighborhood_contains(self, center: Fraction, level: int, x: Fraction) -> bool:
        return dyadic_ball_contains(center, level, x)

    def escapes_above(self, candidate: Fraction, value: Fraction) -> bool:
        return value > candidate

    def order_value(self, x: Fraction) -> Fraction:
        return x

    def divergence_witness(self, stream, params) -> DivergenceWitness | None:
        values = [stream.value(e) for e in stream.take(params.depth)]
        witness = growth_floor_witness(stream, values)
        if witness is not None:
            return witness
        ambient = stream.ambient_limit
        if ambient is not None and self.contains(ambient):
            return None
        if stream.tail_bound is None:
            return None
        return denominator_exclusion(sum(values, Fraction(0)), stream.tail_bound(len(values)), params.qmax)

    def propose_limit(self, stream, params) -> Fraction | None:
        values = [stream.value(e) for e in stream.take(params.depth)]
        partial = sum(values, Fraction(0))
        if stream.covers_depth(params.depth):
            return partial
        if stream.tail_bound is not None:
            guess = simplest_between(partial, partial + stream.tail_bound(len(values)))
            return guess if guess.denominator <= params.qmax else None
        return partial.limit_denominator(params.qmax)

    def window_elements(self, bound: SearchBound) -> tuple[Fraction, ...]:
        seen: dict[Fraction, None] = {}
        for q in range(1, bound.degree + 1):
            for p in range(1, q + 1):
                seen.setdefault(Fraction(p, q))
        return tuple(sorted(seen))

    def divisor_candidates(self, x: Fraction, bound: SearchBound) -> DivisorSearch:
        halves = (x / 2,) if x else ()
        window = tuple(a for a in self.window_elements(bound) if a < x and a != x / 2)
        return DivisorSearch(candidates=halves + window, exhaustive=False)

    def describe(self) -> dict[str, object]:
        return {"kind": self.kind}


def denominator_exclusion(lower: Fraction, tail: Fraction, qmax: int) -> DivergenceWitness | None:
    """
    Limit lies in [lower, lower + tail]; when no p/q with q <= qmax lies there,
    every such candidate is excluded at the level of the gap to the nearest
    Farey neighbour.
    """
    upper = lower + tail
    if bounded_fraction_in(lower, upper, qmax) is not None:
        return None
    below, _ = farey_neighbors(lower, qmax)
    _, above = farey_neighbors(upper, qmax)
    gap = min(lower - below, above - upper)
    level = dyadic_level(gap)
    logger.debug("Denominator exclusion up to %d at level %d", qmax, level)
    return DivergenceWitness(
        WitnessKind.DENOMINATOR_EXCLUSION,
        f"no p/q with q <= {qmax} in the limit interval; excluded at level {level}",
        {
            "lower": str(lower),
            "upper": str(upper),
            "qmax": qmax,
            "below": str(below),
            "above": str(above),
            "level": level,
        },
    )
