"""Bounded searches for irreducibility and primality."""

from __future__ import annotations

import logging
from typing import TypeVar

from .base import TopologicalMonoid
from .errors import UnitElementError
from .types import BoundedVerdict, SearchBound

logger = logging.getLogger(__name__)

E = TypeVar("E")


def _require_non_unit(instance: TopologicalMonoid[E], x: E, what: str) -> None:
    instance.check(x)
    if instance.is_unit(x):
        raise UnitElementError(f"unit has no {what} status")


def is_irreducible(instance: TopologicalMonoid[E], x: E, bound: SearchBound) -> BoundedVerdict:
    """
    Search 2-factor decompositions x = a*b with a, b non-units.

    Any longer decomposition groups into two factors, so two suffice.

    Returns:
        No with witness (a, b); Yes when the instance decides it structurally
        or the divisor enumeration was exhaustive; Unknown otherwise.
    """
    _require_non_unit(instance, x, "irreducibility")
    structural = instance.irreducible_by_structure(x)
    search = instance.divisor_candidates(x, bound)
    for a in search.candidates:
        if a == instance.identity or a == x:
            continue
        b = instance.divides(a, x)
        if b is not None and b != instance.identity:
            return BoundedVerdict.no(bound, witness=(a, b))
    if structural is True or search.exhaustive:
        return BoundedVerdict.yes(bound)
    logger.debug("irreducibility of %s undecided within %s", instance.format(x), bound)
    return BoundedVerdict.unknown(bound, note="no split within window")


def is_prime_bounded(
    instance: TopologicalMonoid[E], x: E, max_factors: int, bound: SearchBound
) -> BoundedVerdict:
    """
    Look for a product a_1 ... a_r (r <= max_factors) of window elements that
    x divides while dividing no a_i.

    Factors already divisible by x cannot appear in a witness and are
    dropped; products are capped at total weight bound.degree.
    """
    _require_non_unit(instance, x, "primality")
    if max_factors < 1:
        raise ValueError("max_factors must be positive")
    pool = [
        a for a in instance.window_elements(bound)
        if instance.divides(x, a) is None
    ]
    pool.sort(key=instance.weight)
    weights = [instance.weight(a) for a in pool]

    def search(start: int, product: E, used: list[E], weight: int) -> tuple[E, ...] | None:
        if len(used) >= 2 and instance.divides(x, product) is not None:
            return tuple(used)
        if len(used) == max_factors:
            return None
        for i in range(start, len(pool)):
            if weight + weights[i] > bound.degree:
                break
            found = search(i, instance.combine(product, pool[i]), used + [pool[i]], weight + weights[i])
            if found is not None:
                return found
        return None

    witness = search(0, instance.identity, [], 0)
    if witness is not None:
        return BoundedVerdict.no(bound, witness=witness, note="divides the product, no factor")
    return BoundedVerdict.yes(bound, note=f"no witness with up to {max_factors} factors")
