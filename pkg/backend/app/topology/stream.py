"""Countable indexed families of factors and their sub-streams."""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Callable, Generic, Iterable, Iterator, Sequence, TypeVar

from app.monoid.errors import ElementParseError, UnitElementError

if TYPE_CHECKING:
    from app.monoid.base import TopologicalMonoid

E = TypeVar("E")

TailBound = Callable[[int], Fraction]


@dataclass(frozen=True)
class StreamEntry(Generic[E]):
    """One factor of a stream: factor(index) ** multiplicity."""

    index: int
    factor: E
    multiplicity: int = 1


@dataclass(frozen=True)
class SubsetRule:
    """Index selection used for decimation.

    kinds: cofinite(i, ...) removes finitely many indices; indices(i, ...)
    keeps finitely many; squares, evens, odds and multiples(m) keep infinite
    arithmetic patterns.
    """

    kind: str
    args: tuple[int, ...] = ()

    _KINDS = ("cofinite", "indices", "squares", "evens", "odds", "multiples")

    def __post_init__(self) -> None:
        if self.kind not in self._KINDS:
            raise ValueError(f"Unknown subset rule: {self.kind}")
        if self.kind == "multiples" and (len(self.args) != 1 or self.args[0] < 1):
            raise ValueError("multiples(m) needs one positive argument")

    def selects(self, index: int) -> bool:
        if self.kind == "cofinite":
            return index not in self.args
        if self.kind == "indices":
            return index in self.args
        if self.kind == "squares":
            return index >= 0 and math.isqrt(index) ** 2 == index
        if self.kind == "evens":
            return index % 2 == 0
        if self.kind == "odds":
            return index % 2 == 1
        return index % self.args[0] == 0

    @property
    def removed(self) -> frozenset[int] | None:
        """The finite set removed by a cofinite rule."""
        return frozenset(self.args) if self.kind == "cofinite" else None

    @property
    def kept(self) -> frozenset[int] | None:
        """The finite set kept by an indices rule."""
        return frozenset(self.args) if self.kind == "indices" else None

    def spec(self) -> str:
        if self.kind in ("squares", "evens", "odds"):
            return self.kind
        return f"{self.kind}({','.join(str(a) for a in self.args)})"

    @classmethod
    def parse(cls, text: str) -> "SubsetRule":
        text = text.strip()
        if "(" not in text:
            try:
                return cls(text)
            except ValueError as e:
                raise ElementParseError(str(e), text, 0) from e
        if not text.endswith(")"):
            raise ElementParseError("expected ')'", text, len(text))
        kind, _, inner = text[:-1].partition("(")
        try:
            args = tuple(int(a) for a in inner.split(",") if a.strip())
            return cls(kind.strip(), tuple(sorted(set(args))) if kind.strip() != "multiples" else args)
        except ValueError as e:
            raise ElementParseError(str(e), text, len(kind) + 1) from e


class FactorStream(Generic[E]):
    """A deterministic, repeatable enumeration of factors of one instance.

    Entries are produced lazily and cached; indices increase strictly along
    positions. Optional structural metadata supplied by generator rules:

    tail_bound(n): upper bound of the order-value of all entries at
        positions >= n (additive instances only).
    ambient_limit: exact limit in the ambient completion (may lie outside
        the carrier).
    growth_floor(n): proven lower bound of the order-value sum over the
        first n positions that grows without limit (divergent rules only).
    """

    def __init__(
        self,
        instance: TopologicalMonoid[E],
        source: Callable[[], Iterator[StreamEntry[E]]],
        *,
        length: int | None,
        label: str,
        tail_bound: TailBound | None = None,
        ambient_limit: E | None = None,
        growth_floor: TailBound | None = None,
    ):
        self._instance = instance
        self._source = source
        self._length = length
        self._label = label
        self._tail_bound = tail_bound
        self._ambient_limit = ambient_limit
        self._growth_floor = growth_floor
        self._cache: list[StreamEntry[E]] = []
        self._iterator: Iterator[StreamEntry[E]] | None = None
        self._exhausted = False
        self._lock = threading.Lock()

    # --- Construction ----------------------------------------------------

    @classmethod
    def from_factors(
        cls,
        instance: TopologicalMonoid[E],
        factors: Sequence[E],
        *,
        start: int = 0,
        multiplicities: Sequence[int] | None = None,
        label: str | None = None,
    ) -> "FactorStream[E]":
        """A finite stream indexed start, start+1, ..."""
        instance.check(*factors)
        mults = list(multiplicities) if multiplicities is not None else [1] * len(factors)
        if len(mults) != len(factors):
            raise ValueError("multiplicities must match factors")
        entries = [
            StreamEntry(start + i, f, m) for i, (f, m) in enumerate(zip(factors, mults))
        ]
        _require_non_units(instance, entries)
        return cls(
            instance,
            lambda: iter(entries),
            length=len(entries),
            label=label or "finite(" + ", ".join(instance.format(f) for f in factors) + ")",
        )

    @classmethod
    def from_rule(
        cls,
        instance: TopologicalMonoid[E],
        factor: Callable[[int], E],
        *,
        start: int = 0,
        label: str,
        tail_bound: TailBound | None = None,
        ambient_limit: E | None = None,
        growth_floor: TailBound | None = None,
    ) -> "FactorStream[E]":
        """An infinite stream j -> factor(j) for j = start, start+1, ..."""

        def generate() -> Iterator[StreamEntry[E]]:
            j = start
            while True:
                entry = StreamEntry(j, factor(j))
                _require_non_units(instance, [entry])
                yield entry
                j += 1

        return cls(
            instance,
            generate,
            length=None,
            label=label,
            tail_bound=tail_bound,
            ambient_limit=ambient_limit,
            growth_floor=growth_floor,
        )

    # --- Accessors -------------------------------------------------------

    @property
    def instance(self) -> TopologicalMonoid[E]:
        return self._instance

    @property
    def label(self) -> str:
        return self._label

    @property
    def length(self) -> int | None:
        return self._length

    @property
    def is_finite(self) -> bool:
        return self._length is not None

    @property
    def tail_bound(self) -> TailBound | None:
        return self._tail_bound

    @property
    def ambient_limit(self) -> E | None:
        return self._ambient_limit

    @property
    def growth_floor(self) -> TailBound | None:
        return self._growth_floor

    def take(self, depth: int) -> tuple[StreamEntry[E], ...]:
        """The first `depth` entries (fewer if the stream is shorter)."""
        with self._lock:
            if self._iterator is None:
                self._iterator = self._source()
            while len(self._cache) < depth and not self._exhausted:
                try:
                    self._cache.append(next(self._iterator))
                except StopIteration:
                    self._exhausted = True
            return tuple(self._cache[:depth])

    def value(self, entry: StreamEntry[E]) -> E:
        """factor ** multiplicity of one entry."""
        return self._instance.power(entry.factor, entry.multiplicity)

    def covers_depth(self, depth: int) -> bool:
        """True when the first `depth` positions are the whole stream."""
        return self.is_finite and self._length <= depth

    # --- Sub-streams -----------------------------------------------------

    def select(self, rule: SubsetRule) -> "FactorStream[E]":
        """The sub-stream of entries whose index the rule keeps."""
        parent = self
        kept = rule.kept

        def generate() -> Iterator[StreamEntry[E]]:
            position = 0
            top = max(kept) if kept else None
            while True:
                chunk = parent.take(position + 1)
                if len(chunk) <= position:
                    return
                entry = chunk[position]
                if top is not None and entry.index > top:
                    return
                if rule.selects(entry.index):
                    yield entry
                position += 1

        length = None
        if self.is_finite:
            length = sum(1 for e in self.take(self._length) if rule.selects(e.index))

        tail_bound = None
        if self._tail_bound is not None:
            tail_bound = _sub_tail_bound(self, rule)

        ambient = None
        removed = rule.removed
        if removed is not None and self._ambient_limit is not None:
            ambient = self._ambient_limit
            for entry in self._removed_entries(removed):
                ambient = self._instance._ambient_divide(self.value(entry), ambient)
                if ambient is None:
                    break
        elif self.is_finite:
            ambient = self._instance.product(
                self.value(e) for e in self.take(self._length) if rule.selects(e.index)
            )

        stream = FactorStream(
            self._instance,
            generate,
            length=length,
            label=f"{self._label}|{rule.spec()}",
            tail_bound=tail_bound,
            ambient_limit=ambient,
        )
        if kept is not None and not self.is_finite:
            # Finitely many indices: materialise to learn the length.
            entries = stream.take(len(kept))
            stream._length = len(entries)
            stream._ambient_limit = self._instance.product(self.value(e) for e in entries)
        return stream

    def _removed_entries(self, removed: frozenset[int]) -> list[StreamEntry[E]]:
        top = max(removed)
        found: list[StreamEntry[E]] = []
        position = 0
        while True:
            chunk = self.take(position + 1)
            if len(chunk) <= position or chunk[position].index > top:
                return found
            if chunk[position].index in removed:
                found.append(chunk[position])
            position += 1

    def with_entries(self, entries: Iterable[StreamEntry[E]], label: str) -> "FactorStream[E]":
        """A finite stream over explicitly given entries (normal forms)."""
        items = list(entries)
        _require_non_units(self._instance, items)
        return FactorStream(
            self._instance, lambda: iter(items), length=len(items), label=label
        )

    def __repr__(self) -> str:
        return f"<FactorStream {self._label} on {self._instance.name}>"


def disjoint_union(
    outer: FactorStream[E], expansions: Callable[[StreamEntry[E]], FactorStream[E]]
) -> FactorStream[E]:
    """Merge per-factor expansions into one stream over the disjoint union of
    their index sets, enumerated diagonally (outer position + inner position).

    The merged stream is indexed by position.
    """
    instance = outer.instance
    inner_cache: dict[int, FactorStream[E]] = {}
    cache_lock = threading.Lock()

    def inner_at(s: int) -> FactorStream[E] | None:
        outer_entries = outer.take(s + 1)
        if len(outer_entries) <= s:
            return None
        with cache_lock:
            if s not in inner_cache:
                inner_cache[s] = expansions(outer_entries[s])
            return inner_cache[s]

    length = None
    if outer.is_finite:
        inner_lengths = [inner_at(s).length for s in range(outer.length)]
        if all(n is not None for n in inner_lengths):
            length = sum(inner_lengths)

    def generate() -> Iterator[StreamEntry[E]]:
        position = 0
        diagonal = 0
        while length is None or position < length:
            for s in range(diagonal + 1):
                inner = inner_at(s)
                if inner is None:
                    break
                entries = inner.take(diagonal - s + 1)
                if len(entries) > diagonal - s:
                    e = entries[diagonal - s]
                    yield StreamEntry(position, e.factor, e.multiplicity)
                    position += 1
            diagonal += 1

    return FactorStream(
        instance,
        generate,
        length=length,
        label=f"union({outer.label})",
    )


def _require_non_units(instance, entries: Iterable[StreamEntry]) -> None:
    if not instance.reduced:
        return
    for entry in entries:
        if entry.multiplicity < 1:
            raise ValueError("multiplicities must be positive")
        if entry.factor == instance.identity:
            raise UnitElementError(
                f"stream factor at index {entry.index} is the identity"
            )


def _sub_tail_bound(parent: FactorStream, rule: SubsetRule) -> TailBound:
    """Tail of a sub-stream after its n-th entry is bounded by the parent's
    tail after the parent position of that entry."""

    def bound(n: int) -> Fraction:
        kept_positions: list[int] = []
        position = 0
        while len(kept_positions) <= n:
            chunk = parent.take(position + 1)
            if len(chunk) <= position:
                return Fraction(0)
            if rule.selects(chunk[position].index):
                kept_positions.append(position)
            position += 1
            if rule.kept is not None and chunk[-1].index > max(rule.kept, default=-1):
                return Fraction(0)
        return parent.tail_bound(kept_positions[n])

    return bound
