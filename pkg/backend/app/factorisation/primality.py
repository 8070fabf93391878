"""Topological primality and the atoms / primes / topological primes chain."""

from __future__ import annotations

import logging
from itertools import combinations, combinations_with_replacement
from typing import Any, Iterable

from app.monoid.base import TopologicalMonoid
from app.monoid.config import VerificationParams
from app.monoid.errors import UnitElementError
from app.monoid.search import is_irreducible, is_prime_bounded
from app.monoid.types import BoundedVerdict, Outcome, SearchBound, Verdict
from app.topology.net import find_limit, verify_convergence
from app.topology.stream import FactorStream
from app.topology.types import CheckOutcome

from .exponent_map import ExponentMap
from .zmonoid import FactorisationMonoid

logger = logging.getLogger(__name__)


def atom_streams(z: FactorisationMonoid, max_factors: int) -> list[FactorStream]:
    """
    Deterministic test products over the atoms of the ground instance.

    Finite products of up to max_factors distinct window atoms, then the
    product of the whole atom family and of the family without its first
    member (when the ground instance has a family).
    """
    streams: list[FactorStream] = []
    for size in range(1, max_factors + 1):
        for chosen in combinations(z.atoms, size):
            streams.append(z.atom_stream(ExponentMap.of({a: 1 for a in chosen})))
    if z.family is not None:
        streams.append(z.atom_stream(ExponentMap(base=1)))
        first = z.family.member(0)
        streams.append(z.atom_stream(ExponentMap.of({first: -1}, base=1)))
    return streams


def topologically_prime_check(
    x: Any,
    instance: TopologicalMonoid,
    streams: Iterable[FactorStream] = (),
    params: VerificationParams | None = None,
    z: FactorisationMonoid | None = None,
) -> BoundedVerdict:
    """
    Whenever x divides a convergent product, does it divide some factor?

    The products tested are the supplied streams followed by the generated
    atom streams. A Yes verdict means no counterexample within these
    bounds; No carries (stream label, limit) of a product that x divides
    while dividing none of its factors (within the first `depth` factors
    for infinite streams).

    Raises:
        UnitElementError: If x is the identity
    """
    params = params or VerificationParams()
    instance.check(x)
    if instance.is_unit(x):
        raise UnitElementError("unit has no topological primality status")
    z = z or FactorisationMonoid(instance, params)
    bound = params.bound
    tested = 0
    for stream in [*streams, *atom_streams(z, params.max_factors)]:
        report = find_limit(stream, params)
        if not report.converged:
            continue
        limit = report.candidate
        if instance.divides(x, limit) is None:
            continue
        tested += 1
        entries = stream.take(params.depth)
        if any(instance.divides(x, e.factor) is not None for e in entries):
            continue
        logger.debug("%s divides %s but none of its factors", instance.format(x), stream.label)
        return BoundedVerdict.no(
            bound,
            witness=(stream.label, limit),
            note=f"divides the limit {instance.format(limit)} of {stream.label}, no factor",
        )
    return BoundedVerdict.yes(bound, note=f"{tested} convergent products divisible, each with a dividing factor")


def is_topologically_irreducible(
    x: Any,
    instance: TopologicalMonoid,
    streams: Iterable[FactorStream] = (),
    params: VerificationParams | None = None,
    z: FactorisationMonoid | None = None,
) -> BoundedVerdict:
    """
    Can x be written as a convergent product of factors all different from x?

    A finite split x = a*b is such a product. Otherwise the supplied streams
    and the generated atom streams are searched for one with at least two
    factors, none equal to x, that converges to x: a finite one must multiply
    out to x exactly, an infinite one must be certified at the working level
    and agree with its exact ambient limit when the rule knows it.

    Returns:
        No with witness (a, b) for a finite split or (stream label,) for a
        convergent decomposition; otherwise the finite verdict of
        is_irreducible, Yes or Unknown.

    Raises:
        UnitElementError: If x is a unit
    """
    params = params or VerificationParams()
    instance.check(x)
    if instance.is_unit(x):
        raise UnitElementError("unit has no topological irreducibility status")
    bound = params.bound
    finite = is_irreducible(instance, x, bound)
    if finite.status is Verdict.NO:
        return BoundedVerdict.no(bound, witness=finite.witness, note="finite split")
    z = z or FactorisationMonoid(instance, params)
    searched = 0
    for stream in [*streams, *atom_streams(z, params.max_factors)]:
        entries = stream.take(params.depth)
        if stream.covers_depth(params.depth) and len(entries) < 2:
            continue
        if any(e.factor == x for e in entries):
            continue
        searched += 1
        if stream.covers_depth(params.depth):
            converged = instance.product(stream.value(e) for e in entries) == x
        elif stream.ambient_limit is not None and stream.ambient_limit != x:
            converged = False
        else:
            converged = verify_convergence(stream, x, params.level, params.depth, params).converged
        if converged:
            logger.debug("%s is the limit of %s", instance.format(x), stream.label)
            return BoundedVerdict.no(
                bound, witness=(stream.label,), note=f"limit of {stream.label}"
            )
    if finite.status is Verdict.YES:
        return BoundedVerdict.yes(bound, note=f"no convergent decomposition among {searched} products")
    return BoundedVerdict.unknown(bound, note=finite.note)


def power_streams(z: FactorisationMonoid, max_factors: int) -> list[FactorStream]:
    """Finite products of atoms with repetition (a, a, b, ...)."""
    atoms = list(z.atoms)
    streams: list[FactorStream] = []
    for size in range(2, max_factors + 1):
        for chosen in combinations_with_replacement(atoms, size):
            if len(set(chosen)) < size:
                streams.append(FactorStream.from_factors(z.ground, list(chosen)))
    return streams


def equivalence_chain_check(
    instance: TopologicalMonoid,
    params: VerificationParams | None = None,
    z: FactorisationMonoid | None = None,
) -> CheckOutcome:
    """
    On a topologically factorial instance the three notions coincide: for
    every window element with at most max_factors atom factors,
    is_irreducible, is_prime_bounded and topologically_prime_check give the
    same verdict.
    """
    params = params or VerificationParams()
    bound: SearchBound = params.bound
    z = z or FactorisationMonoid(instance, params)
    extra = power_streams(z, params.max_factors)
    disagreements = []
    undecided = 0
    checked = 0
    for x in instance.window_elements(bound):
        size = instance.size(x)
        if size is None or size > params.max_factors:
            continue
        verdicts = (
            is_irreducible(instance, x, bound).status,
            is_prime_bounded(instance, x, params.max_factors, bound).status,
            topologically_prime_check(x, instance, extra, params, z).status,
        )
        checked += 1
        if Verdict.UNKNOWN in verdicts:
            undecided += 1
        elif len(set(verdicts)) > 1:
            disagreements.append(
                {"element": instance.format(x), "verdicts": [v.value for v in verdicts]}
            )
    data = {"checked": checked, "undecided": undecided, "disagreements": disagreements}
    if disagreements:
        return CheckOutcome(Outcome.FAIL, "atom, prime and topological prime verdicts disagree", data=data)
    if undecided:
        return CheckOutcome(Outcome.INCONCLUSIVE, f"{undecided} elements undecided within bounds", data=data)
    return CheckOutcome(
        Outcome.PASS, f"verdicts agree on {checked} window elements of {instance.name}", data=data
    )
