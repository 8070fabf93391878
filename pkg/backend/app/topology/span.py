"""Membership in the finitely generated span <M>."""

from __future__ import annotations

from typing import Sequence, TypeVar

from app.monoid.base import TopologicalMonoid
from app.monoid.types import BoundedVerdict, SearchBound

E = TypeVar("E")


def finite_span_contains(
    instance: TopologicalMonoid[E],
    generators: Sequence[E],
    x: E,
    degree: int,
) -> BoundedVerdict:
    """
    Decide x in <M> by searching exponent vectors of total at most `degree`.

    The search divides x by generators, so every branch ends either at the
    identity (Yes, witness = the factor list) or at a remainder no generator
    divides. No is returned when no branch was cut by the degree bound; the
    witness then lists the generators that divide x at all.
    """
    instance.check(x, *generators)
    bound = SearchBound(window=max(1, len(generators)), degree=max(1, degree))
    gens = [g for g in dict.fromkeys(generators) if g != instance.identity]
    if x == instance.identity:
        return BoundedVerdict.yes(bound, witness=(), note="empty product")

    truncated = False
    seen: set = set()

    def search(remainder: E, start: int, used: list[E]) -> list[E] | None:
        nonlocal truncated
        if remainder == instance.identity:
            return used
        if (remainder, start, len(used)) in seen:
            return None
        seen.add((remainder, start, len(used)))
        if len(used) >= degree:
            truncated = True
            return None
        for i in range(start, len(gens)):
            rest = instance.divides(gens[i], remainder)
            if rest is None:
                continue
            found = search(rest, i, used + [gens[i]])
            if found is not None:
                return found
        return None

    found = search(x, 0, [])
    if found is not None:
        return BoundedVerdict.yes(bound, witness=tuple(found))
    if truncated:
        return BoundedVerdict.unknown(bound, note=f"degree bound {degree} reached")
    dividing = tuple(g for g in gens if instance.divides(g, x) is not None)
    return BoundedVerdict.no(bound, witness=dividing, note="no exponent vector reaches x")
