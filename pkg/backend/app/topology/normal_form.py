"""Multiset normal form of a factor stream."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Generic, TypeVar

from app.monoid.config import VerificationParams
from app.monoid.errors import FiniteMultiplicityError

from .stream import FactorStream, StreamEntry

E = TypeVar("E")


@dataclass(frozen=True)
class NormalForm(Generic[E]):
    """Distinct factors h with their multiplicities m(h), in order of first
    occurrence; `first_index` is the stream index where h first appears."""

    counts: tuple[tuple[E, int], ...]
    first_index: tuple[int, ...]
    depth: int
    complete: bool

    def multiplicity(self, h: E) -> int:
        for factor, m in self.counts:
            if factor == h:
                return m
        return 0

    def as_dict(self) -> dict[E, int]:
        return dict(self.counts)


def multiset_normal_form(
    stream: FactorStream[E], depth: int, params: VerificationParams | None = None
) -> NormalForm[E]:
    """
    Collapse repeated factors into multiplicities within the first `depth`
    positions.

    Raises:
        FiniteMultiplicityError: if a factor of an infinite stream repeats
            beyond the finiteness threshold (no element can occur infinitely
            often in a convergent product).
    """
    params = (params or VerificationParams()).with_overrides(depth=depth)
    instance = stream.instance
    order: list[E] = []
    first: dict[E, int] = {}
    counts: dict[E, int] = {}
    for entry in stream.take(depth):
        if entry.factor not in counts:
            order.append(entry.factor)
            first[entry.factor] = entry.index
            counts[entry.factor] = 0
        counts[entry.factor] += entry.multiplicity
    complete = stream.covers_depth(depth)
    limit = params.multiplicity_cap if complete else params.repetition_threshold
    for factor in order:
        if counts[factor] > limit:
            raise FiniteMultiplicityError(
                f"factor {instance.format(factor)} occurs {counts[factor]} times within "
                f"depth {depth}; no element can occur infinitely many times in a "
                "convergent product"
            )
    return NormalForm(
        counts=tuple((f, counts[f]) for f in order),
        first_index=tuple(first[f] for f in order),
        depth=depth,
        complete=complete,
    )


def normal_form_stream(stream: FactorStream[E], form: NormalForm[E]) -> FactorStream[E]:
    """The finite stream h ** m(h) indexed by first occurrence."""
    entries = [
        StreamEntry(index, factor, m)
        for (factor, m), index in zip(form.counts, form.first_index)
    ]
    return stream.with_entries(entries, label=f"nf({stream.label})")
