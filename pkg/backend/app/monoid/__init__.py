"""
Topological commutative monoid abstraction layer.

This module provides the instance-agnostic interface (combine, divides,
power, is_unit, neighbourhood basis) together with the bounded searches for
irreducibility and primality.

Usage:
    from app.monoid import make_instance, is_irreducible

    free = make_instance("free", gens=2)
    x, y = free.parse("x"), free.parse("y")
    verdict = is_irreducible(free, free.combine(x, y), SearchBound(window=2, degree=4))
"""

from typing import Any

from .base import AtomFamily, TopologicalMonoid
from .config import VerificationParams
from .errors import (
    ElementParseError,
    FiniteMultiplicityError,
    InfiniteSupportError,
    InvalidInstanceParams,
    MixedInstanceError,
    MonoidError,
    NotAnAtomError,
    NotInZError,
    OrderViolationError,
    UnitElementError,
    UnknownInstanceError,
)
from .search import is_irreducible, is_prime_bounded
from .types import BoundedVerdict, DivisorSearch, Outcome, SearchBound, Verdict

__all__ = [
    # Core classes
    "TopologicalMonoid",
    "AtomFamily",
    "VerificationParams",
    # Types
    "BoundedVerdict",
    "DivisorSearch",
    "Outcome",
    "SearchBound",
    "Verdict",
    # Errors
    "MonoidError",
    "MixedInstanceError",
    "UnitElementError",
    "NotAnAtomError",
    "InfiniteSupportError",
    "FiniteMultiplicityError",
    "NotInZError",
    "OrderViolationError",
    "InvalidInstanceParams",
    "UnknownInstanceError",
    "ElementParseError",
    # Searches
    "is_irreducible",
    "is_prime_bounded",
    "enumerate_atoms",
    # Factory
    "make_instance",
    "get_instance",
    "reset_instances",
]


# Cached instances keyed by (kind, sorted params)
_instance_cache: dict[tuple, TopologicalMonoid] = {}


def make_instance(kind: str, **params: Any) -> TopologicalMonoid:
    """
    Create a monoid instance with all oracles wired.

    Args:
        kind: One of free, qplus, harmonic, series, pointwise, restricted,
            integers-demo
        **params: Kind-specific parameters (gens/n, names, window,
            vars/nvars, precision)

    Returns:
        A fresh TopologicalMonoid

    Raises:
        UnknownInstanceError: If the kind is not registered
        InvalidInstanceParams: If parameters are unsupported or out of range

    Example:
        series = make_instance("series", vars=2, precision=8)
    """
    # Import here to avoid circular imports
    from .registry import InstanceRegistry

    return InstanceRegistry.create(kind, **params)


def get_instance(kind: str, **params: Any) -> TopologicalMonoid:
    """Shared instance per (kind, params); instances are immutable."""
    key = (kind, tuple(sorted((k, v) for k, v in params.items() if v is not None)))
    if key not in _instance_cache:
        _instance_cache[key] = make_instance(kind, **params)
    return _instance_cache[key]


def reset_instances() -> None:
    """
    Drop cached instances.

    Useful for testing.
    """
    _instance_cache.clear()


def enumerate_atoms(instance: TopologicalMonoid, bound: SearchBound) -> list:
    """Atoms representable within the window, each certified irreducible."""
    return [
        a for a in instance.atom_candidates(bound)
        if is_irreducible(instance, a, bound).status is Verdict.YES
    ]
