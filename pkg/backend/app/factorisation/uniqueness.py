"""Discovery of factorisations into atoms and their uniqueness."""

from __future__ import annotations

import logging
from typing import Any

from app.monoid.base import TopologicalMonoid
from app.monoid.config import VerificationParams
from app.monoid.types import Outcome
from app.topology.types import CheckOutcome

from .exponent_map import ExponentMap
from .zmonoid import FactorisationMonoid

logger = logging.getLogger(__name__)

# Factorisations collected before the search stops.
MAX_FACTORISATIONS = 16


def finite_factorisations(
    b: Any, z: FactorisationMonoid, max_length: int
) -> list[ExponentMap]:
    """Finitely supported maps m over the window atoms with pi(m) = b."""
    instance = z.ground
    atoms = list(z.atoms)
    found: list[ExponentMap] = []

    def search(rest: Any, start: int, counts: dict[Any, int], length: int) -> None:
        if len(found) >= MAX_FACTORISATIONS:
            return
        if rest == instance.identity:
            m = ExponentMap.of(counts)
            if m not in found:
                found.append(m)
            return
        if length == max_length:
            return
        for i in range(start, len(atoms)):
            q = instance.divides(atoms[i], rest)
            if q is None:
                continue
            counts[atoms[i]] = counts.get(atoms[i], 0) + 1
            search(q, i, counts, length + 1)
            counts[atoms[i]] -= 1

    search(b, 0, {}, 0)
    return found


def family_factorisations(b: Any, z: FactorisationMonoid, max_length: int) -> list[ExponentMap]:
    """Maps with the all-ones family pattern whose product is b:
    b = ones_limit * c with c factored finitely."""
    family = z.family
    if family is None or family.ones_limit is None:
        return []
    instance = z.ground
    if not instance.contains(family.ones_limit):
        return []
    rest = instance._ambient_divide(family.ones_limit, b)
    if rest is None or not instance.contains(rest):
        return []
    ones = ExponentMap(base=1)
    found = []
    for finite in finite_factorisations(rest, z, max_length):
        m = z.combine(ones, finite)
        membership = z.pi_bar(m)
        if membership.in_z and membership.value == b:
            found.append(m)
    return found


def exponent_bound(instance: TopologicalMonoid, atom: Any, b: Any, cap: int) -> int:
    """max{r <= cap : atom^r divides b}."""
    r = 0
    while r < cap and instance.divides(instance.power(atom, r + 1), b) is not None:
        r += 1
    return r


def exponent_mismatches(
    m: ExponentMap, b: Any, z: FactorisationMonoid, cap: int
) -> dict[str, list[int]]:
    """Atoms whose exponent in m differs from max{r : a^r divides b},
    as label -> [exponent in m, exponent by divisibility]."""
    instance = z.ground
    mismatches: dict[str, list[int]] = {}
    for a in z.atoms:
        expected = z.value(m, a)
        recovered = exponent_bound(instance, a, b, max(cap, expected + 1))
        if recovered != expected:
            mismatches[instance.atom_label(a)] = [expected, recovered]
    return mismatches


def unique_factorisation_check(
    b: Any,
    instance: TopologicalMonoid,
    params: VerificationParams | None = None,
    z: FactorisationMonoid | None = None,
) -> CheckOutcome:
    """
    Collect factorisations of b into window atoms (finite ones and, when
    the instance has an atom family, ones using the whole family) and
    compare them as multisets.

    PASS when exactly one factorisation exists and each of its exponents is
    the largest r with a^r dividing b; FAIL when two inequivalent ones were
    found or an exponent disagrees; INCONCLUSIVE when none exists within the
    bounds.
    """
    params = params or VerificationParams()
    instance.check(b)
    z = z or FactorisationMonoid(instance, params)
    size = instance.size(b)
    max_length = size if size is not None else params.degree + 1

    found = finite_factorisations(b, z, max_length)
    found.extend(m for m in family_factorisations(b, z, max_length) if m not in found)
    exponents = {
        instance.atom_label(a): exponent_bound(instance, a, b, max_length)
        for a in z.atoms
        if instance.divides(a, b) is not None
    }
    data = {
        "element": instance.format(b),
        "factorisations": [z.format(m) for m in found],
        "exponents": exponents,
    }
    if not z.atoms:
        return CheckOutcome(
            Outcome.INCONCLUSIVE, f"no atoms in the window of {instance.name} (atomless)", data=data
        )
    if not found:
        return CheckOutcome(
            Outcome.INCONCLUSIVE, f"no factorisation into window atoms of length <= {max_length}", data=data
        )
    if len(found) > 1:
        logger.info("%s has %d factorisations in %s", instance.format(b), len(found), instance.name)
        return CheckOutcome(
            Outcome.FAIL, f"{len(found)} inequivalent factorisations", limit=found[0], data=data
        )
    mismatches = exponent_mismatches(found[0], b, z, max_length)
    if mismatches:
        data["mismatches"] = mismatches
        label = next(iter(mismatches))
        return CheckOutcome(
            Outcome.FAIL,
            f"exponent of {label} in {z.format(found[0])} is not the largest r with {label}^r dividing b",
            limit=found[0],
            data=data,
        )
    return CheckOutcome(Outcome.PASS, f"unique factorisation {z.format(found[0])}", limit=found[0], data=data)
