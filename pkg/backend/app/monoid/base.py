"""Abstract base class for topological commutative monoid instances."""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Callable, Generic, Iterable, TypeVar

from .errors import MixedInstanceError
from .types import DivisorSearch, SearchBound

if TYPE_CHECKING:
    from app.monoid.config import VerificationParams
    from app.topology.stream import FactorStream
    from app.topology.types import DivergenceWitness

E = TypeVar("E")


@dataclass(frozen=True)
class AtomFamily(Generic[E]):
    """A countable family of atoms a_0, a_1, ... indexed by coordinate.

    ones_limit is the exact limit of the product of all members in the
    ambient completion of the instance (it may lie outside the carrier), or
    None when that product diverges even there.
    """

    label: str
    member: Callable[[int], E]
    index_of: Callable[[E], int | None]
    ones_limit: E | None = None


class TopologicalMonoid(ABC, Generic[E]):
    """A reduced, cancellative, Hausdorff commutative monoid with a countable
    neighbourhood basis U_k(x), k = 0, 1, 2, ...

    Subclasses provide the canonical element encoding and the oracles; this
    class supplies the instance-independent operations (combine, divides,
    power, is_unit) with mixed-instance rejection.
    """

    kind: str = "abstract"
    # Standing assumptions; the integers demo is the only instance violating them.
    reduced: bool = True
    # Discrete basis: U_k(x) = {x}.
    discrete: bool = False
    # Partial products are monotone along finite-set inclusion and every
    # basic neighbourhood is order-convex.
    monotone: bool = False
    # Sub-products of convergent products converge (decimation oracle result).
    allows_arbitrary_decimation: bool = True
    # Distinct elements are separated by some basic neighbourhood.
    hausdorff: bool = True

    # --- Identity and encoding -------------------------------------------

    @property
    @abstractmethod
    def identity(self) -> E:
        """The neutral element."""
        pass

    @property
    def name(self) -> str:
        """Short human-readable description used in reports."""
        return self.kind

    @abstractmethod
    def owns(self, x: object) -> bool:
        """True if x is an element encoding of this instance (carrier or ambient)."""
        pass

    @abstractmethod
    def contains(self, x: E) -> bool:
        """Carrier membership of an ambient element."""
        pass

    @abstractmethod
    def format(self, x: E) -> str:
        """Canonical text encoding of an element."""
        pass

    @abstractmethod
    def parse(self, text: str) -> E:
        """Inverse of format(); raises ElementParseError on malformed text."""
        pass

    # --- Algebra ---------------------------------------------------------

    @abstractmethod
    def _combine(self, a: E, b: E) -> E:
        pass

    @abstractmethod
    def _divide(self, a: E, b: E) -> E | None:
        """The unique c in the carrier with a*c = b, or None."""
        pass

    def _ambient_divide(self, a: E, b: E) -> E | None:
        """Quotient b / a in the ambient completion (may leave the carrier)."""
        return self._divide(a, b)

    def check(self, *elements: E) -> None:
        """Reject elements that belong to another instance."""
        for x in elements:
            if not self.owns(x):
                raise MixedInstanceError(
                    f"{x!r} is not an element of instance {self.name}"
                )

    def combine(self, a: E, b: E) -> E:
        """The monoid operation."""
        self.check(a, b)
        return self._combine(a, b)

    def divides(self, a: E, b: E) -> E | None:
        """Return the unique c with combine(a, c) = b, or None if a does not divide b."""
        self.check(a, b)
        if a == self.identity:
            return b
        return self._divide(a, b)

    def power(self, x: E, n: int) -> E:
        """x combined with itself n times (power(x, 0) is the identity)."""
        if n < 0:
            raise ValueError("exponent must be non-negative")
        self.check(x)
        result = self.identity
        base = x
        while n:
            if n & 1:
                result = self._combine(result, base)
            n >>= 1
            if n:
                base = self._combine(base, base)
        return result

    def product(self, factors: Iterable[E]) -> E:
        """Finite product of an iterable of elements."""
        result = self.identity
        for f in factors:
            result = self.combine(result, f)
        return result

    def is_unit(self, x: E) -> bool:
        """True iff x is the identity (H is reduced)."""
        self.check(x)
        return x == self.identity

    def equals(self, a: E, b: E) -> bool:
        """Structural equality of canonical forms."""
        self.check(a, b)
        return a == b

    # --- Topology --------------------------------------------------------

    @abstractmethod
    def neighborhood_contains(self, center: E, level: int, x: E) -> bool:
        """Decide x in U_level(center)."""
        pass

    def escapes_above(self, candidate: E, value: E) -> bool:
        """Monotone refutation: value lies strictly above candidate in the
        instance order, so no extension of value can approach candidate.
        """
        return False

    def order_value(self, x: E) -> Fraction | None:
        """Real-valued size used by additive instances (None otherwise)."""
        return None

    def divergence_witness(
        self, stream: FactorStream[E], params: VerificationParams
    ) -> DivergenceWitness | None:
        """Instance-specific refutation that the stream converges at all."""
        return None

    def propose_limit(self, stream: FactorStream[E], params: VerificationParams) -> E | None:
        """A candidate limit for the stream, when the instance can guess one."""
        return None

    def coordinatewise_limit_exists(
        self, stream: FactorStream[E], dominating: E, params: VerificationParams
    ) -> bool:
        """True when the instance can certify convergence of a sub-stream of a
        stream converging to `dominating` without naming its limit.
        """
        return False

    # --- Bounded search windows ------------------------------------------

    def size(self, x: E) -> int | None:
        """Upper bound on the number of non-unit factors of any finite
        decomposition of x, or None when unbounded.
        """
        return None

    def weight(self, x: E) -> int:
        """Positive cost of a window element, used to cap product searches."""
        size = self.size(x)
        return size if size is not None else 1

    def irreducible_by_structure(self, x: E) -> bool | None:
        """Decide irreducibility from an invariant (e.g. valuation 1), if possible."""
        return None

    @abstractmethod
    def window_elements(self, bound: SearchBound) -> tuple[E, ...]:
        """Non-identity elements enumerated in the window, in a fixed order."""
        pass

    def divisor_candidates(self, x: E, bound: SearchBound) -> DivisorSearch:
        """Candidate proper divisors of x (default: filter the window)."""
        candidates = tuple(
            a for a in self.window_elements(bound)
            if a != x and self._divide(a, x) is not None
        )
        return DivisorSearch(candidates=candidates, exhaustive=False)

    def atom_candidates(self, bound: SearchBound) -> tuple[E, ...]:
        """Elements that may be atoms, in the fixed atom order
        (coordinate order first, sporadic atoms last)."""
        return ()

    def atom_family(self) -> AtomFamily[E] | None:
        """Infinite atom family, if the instance has one."""
        return None

    def atom_label(self, a: E) -> str:
        """Short name of an atom used in exponent-map text."""
        return self.format(a)

    def describe(self) -> dict[str, object]:
        """Parameters echoed in reports."""
        return {"kind": self.kind}

    def __repr__(self) -> str:
        return f"<{type(self).__name__}({self.name})>"
