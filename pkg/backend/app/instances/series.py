"""Power series with constant term 0 (plus 1) under multiplication, m-adic topology.

Elements are coefficient tables below a working precision d over exact
rationals. An element is *exact* when the table is the whole series (a
polynomial of degree < d) and *truncated* when terms of degree >= d may be
missing. Polynomial arithmetic goes through sympy's sparse rings over QQ.
"""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from sympy import Symbol
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, ring

from app.monoid.base import TopologicalMonoid
from app.monoid.errors import ElementParseError, InvalidInstanceParams
from app.monoid.types import DivisorSearch, SearchBound
from app.topology.types import DivergenceWitness, WitnessKind

logger = logging.getLogger(__name__)

Monomial = tuple[int, ...]

_ORDER_TERM = re.compile(r"(?:^|\+)\s*O\(\s*(\d+)\s*\)\s*$")
_TRANSFORMS = standard_transformations + (convert_xor,)


@dataclass(frozen=True)
class SeriesElement:
    """Sorted (monomial, coefficient) pairs with non-zero coefficients."""

    terms: tuple[tuple[Monomial, Fraction], ...]
    exact: bool = True

    @property
    def valuation(self) -> float | int:
        """Least total degree with a non-zero coefficient (inf if none is known)."""
        if not self.terms:
            return math.inf
        return min(sum(m) for m, _ in self.terms)


def _term_key(item: tuple[Monomial, Fraction]) -> tuple:
    monom = item[0]
    return (sum(monom), tuple(-e for e in monom))


class SeriesMonoid(TopologicalMonoid[SeriesElement]):
    """{1} together with the non-zero series of constant term 0.

    U_k(f) = series agreeing with f in every total degree < min(k, d).
    Every infinite product of non-units has strictly increasing valuation,
    so only finite products converge (almost discrete), yet no element is
    isolated (not discrete).
    """

    kind = "series"

    def __init__(self, nvars: int = 2, precision: int = 8):
        if nvars < 1:
            raise InvalidInstanceParams("series need at least one variable")
        if precision < 2:
            raise InvalidInstanceParams("precision must be at least 2")
        self.nvars = nvars
        self.precision = precision
        names = ("x", "y", "z")[:nvars] if nvars <= 3 else tuple(f"x{i + 1}" for i in range(nvars))
        self.names = names
        self._ring, *self._gens = ring(",".join(names), QQ)
        self._symbols = {name: Symbol(name) for name in names}
        for i, name in enumerate(names):
            self._symbols.setdefault(f"x{i + 1}", Symbol(name))

    @property
    def name(self) -> str:
        return f"series(vars={self.nvars}, precision={self.precision})"

    # --- Conversion ------------------------------------------------------

    def _to_poly(self, x: SeriesElement) -> PolyElement:
        return self._ring.from_dict(
            {m: QQ(c.numerator, c.denominator) for m, c in x.terms}
        )

    def _from_poly(self, p: PolyElement, exact: bool) -> SeriesElement:
        kept: list[tuple[Monomial, Fraction]] = []
        for monom, coeff in p.items():
            if sum(monom) >= self.precision:
                exact = False
                continue
            kept.append((tuple(monom), Fraction(int(coeff.numerator), int(coeff.denominator))))
        return SeriesElement(tuple(sorted(kept, key=_term_key)), exact)

    def monomial(self, exponents: Monomial, coeff: Fraction = Fraction(1)) -> SeriesElement:
        return SeriesElement(((tuple(exponents), Fraction(coeff)),), True)

    def variable(self, i: int) -> SeriesElement:
        exps = [0] * self.nvars
        exps[i] = 1
        return self.monomial(tuple(exps))

    # --- Interface -------------------------------------------------------

    @property
    def identity(self) -> SeriesElement:
        return SeriesElement((((0,) * self.nvars, Fraction(1)),), True)

    def owns(self, x: object) -> bool:
        return isinstance(x, SeriesElement) and all(
            len(m) == self.nvars and sum(m) < self.precision for m, _ in x.terms
        )

    def contains(self, x: SeriesElement) -> bool:
        if x == self.identity:
            return True
        if any(sum(m) == 0 for m, _ in x.terms):
            return False
        # The zero series is excluded; a truncated table may still hide a non-zero tail.
        return bool(x.terms) or not x.exact

    def valuation(self, x: SeriesElement) -> float | int:
        """Order of vanishing; 0 for the unit, inf when no coefficient is known."""
        self.check(x)
        return x.valuation

    def format(self, x: SeriesElement) -> str:
        parts = []
        for monom, coeff in x.terms:
            factors = [
                self.names[i] if e == 1 else f"{self.names[i]}^{e}"
                for i, e in enumerate(monom) if e
            ]
            if not factors:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{coeff}*" + "*".join(factors))
        if not x.exact:
            parts.append(f"O({self.precision})")
        return " + ".join(parts) if parts else "0"

    def parse(self, text: str) -> SeriesElement:
        body = text.strip()
        exact = True
        order = _ORDER_TERM.search(body)
        if order is not None:
            if int(order.group(1)) != self.precision:
                raise ElementParseError(
                    f"precision O({order.group(1)}) does not match {self.precision}",
                    text, text.find("O("),
                )
            exact = False
            body = body[: order.start()].strip()
        if not body:
            if exact:
                raise ElementParseError("empty series", text, 0)
            return SeriesElement((), False)
        try:
            expr = parse_expr(body, local_dict=self._symbols, transformations=_TRANSFORMS)
            poly = self._ring.from_expr(expr)
        except Exception as e:
            raise ElementParseError(f"not a polynomial in {', '.join(self.names)}: {e}", text, 0) from e
        element = self._from_poly(poly, exact)
        if not element.exact and exact:
            raise ElementParseError(f"terms of degree >= {self.precision} need O(...)", text, 0)
        if not self.contains(element):
            raise ElementParseError("series must be 1 or have constant term 0", text, 0)
        return element

    def _combine(self, a: SeriesElement, b: SeriesElement) -> SeriesElement:
        if a == self.identity:
            return b
        if b == self.identity:
            return a
        product = self._to_poly(a) * self._to_poly(b)
        return self._from_poly(product, a.exact and b.exact)

    def _divide(self, a: SeriesElement, b: SeriesElement) -> SeriesElement | None:
        if a == self.identity:
            return b
        if a == b:
            return self.identity
        if not (a.exact and b.exact):
            return None
        quotient, remainder = self._to_poly(b).div(self._to_poly(a))
        if remainder:
            return None
        result = self._from_poly(quotient, True)
        return result if self.contains(result) else None

    def neighborhood_contains(self, center: SeriesElement, level: int, x: SeriesElement) -> bool:
        cut = min(level, self.precision)
        low = lambda s: tuple(t for t in s.terms if sum(t[0]) < cut)  # noqa: E731
        return low(center) == low(x)

    def divergence_witness(self, stream, params) -> DivergenceWitness | None:
        entries = stream.take(params.depth)
        if not entries:
            return None
        valuations = []
        product = self.identity
        for entry in entries:
            product = self._combine(product, stream.value(entry))
            valuations.append(product.valuation)
            if product.valuation == math.inf:
                break
        return DivergenceWitness(
            WitnessKind.VALUATION_ESCAPE,
            "partial-product valuations increase without bound; no carrier element is a limit",
            {"valuations": [str(v) for v in valuations]},
        )

    def truncation(self, x: SeriesElement, degree: int) -> SeriesElement:
        """The polynomial made of the terms of x of total degree < degree."""
        return SeriesElement(tuple(t for t in x.terms if sum(t[0]) < degree), True)

    def size(self, x: SeriesElement) -> int | None:
        v = x.valuation
        if x == self.identity:
            return 0
        return None if v == math.inf else int(v)

    def weight(self, x: SeriesElement) -> int:
        v = x.valuation
        return 1 if v in (0, math.inf) else int(v)

    def irreducible_by_structure(self, x: SeriesElement) -> bool | None:
        # Valuations add, so a valuation-1 series has no split into non-units.
        return True if x.valuation == 1 else None

    def _monomials(self, max_degree: int) -> list[Monomial]:
        found: list[Monomial] = []
        for degree in range(1, max_degree + 1):
            for combo in combinations_with_replacement(range(self.nvars), degree):
                exps = [0] * self.nvars
                for i in combo:
                    exps[i] += 1
                found.append(tuple(exps))
        return found

    def window_elements(self, bound: SearchBound) -> tuple[SeriesElement, ...]:
        """0/1-coefficient polynomials with one or two monomials of degree <= 2."""
        monomials = self._monomials(min(2, self.precision - 1))
        elements = [self.monomial(m) for m in monomials]
        for pair in combinations(monomials, 2):
            elements.append(
                SeriesElement(tuple(sorted(((m, Fraction(1)) for m in pair), key=_term_key)), True)
            )
        return tuple(elements)

    def divisor_candidates(self, x: SeriesElement, bound: SearchBound) -> DivisorSearch:
        candidates = tuple(
            a for a in self.window_elements(bound)
            if a != x and self._divide(a, x) is not None
        )
        return DivisorSearch(candidates=candidates, exhaustive=False)

    def atom_candidates(self, bound: SearchBound) -> tuple[SeriesElement, ...]:
        return tuple(a for a in self.window_elements(bound) if a.valuation == 1)

    def describe(self) -> dict[str, object]:
        return {"kind": self.kind, "vars": self.nvars, "precision": self.precision}
