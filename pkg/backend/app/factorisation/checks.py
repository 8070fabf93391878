"""Executable checks of the structure of Z(H): addition, order ideal,
divisibility, initial topology, atoms and the section Xi."""

from __future__ import annotations

import logging
from typing import Any, Sequence

from app.monoid.errors import NotInZError, OrderViolationError
from app.monoid.search import is_irreducible
from app.monoid.types import Outcome, SearchBound, Verdict
from app.topology.types import CheckOutcome

from .exponent_map import ExponentMap, ZMembershipReport, ZVerdict
from .zmonoid import FactorisationMonoid, xi

logger = logging.getLogger(__name__)


def _require_in_z(z: FactorisationMonoid, *maps: ExponentMap) -> list[ZMembershipReport]:
    reports = []
    for m in maps:
        membership = z.pi_bar(m)
        if not membership.in_z:
            raise NotInZError(f"{z.format(m)} is not verified in {z.name}: {membership.verdict.value}")
        reports.append(membership)
    return reports


def _agree_up_to(z: FactorisationMonoid, a: Any, b: Any, level: int) -> bool:
    """Ground elements a, b lie in each other's basic neighbourhoods up to level."""
    return all(z.ground.neighborhood_contains(a, k, b) for k in range(level + 1))


def zh_add(
    f: ExponentMap, g: ExponentMap, z: FactorisationMonoid
) -> tuple[ExponentMap, ZMembershipReport]:
    """
    Componentwise sum of two maps in Z(H), with the homomorphism property
    pi_bar(f + g) = pi_bar(f) * pi_bar(g) checked at every level up to k.

    Raises:
        NotInZError: If f or g is not verified in Z(H)
    """
    image_f, image_g = _require_in_z(z, f, g)
    total = z.combine(f, g)
    membership = z.pi_bar(total)
    if not membership.in_z:
        return total, membership
    expected = z.ground.combine(image_f.value, image_g.value)
    level = z.params.level
    if not _agree_up_to(z, membership.value, expected, level):
        logger.warning("pi_bar is not additive on %s + %s", z.format(f), z.format(g))
        return total, ZMembershipReport(
            ZVerdict.INCONCLUSIVE,
            membership.report,
            membership.value,
            note=f"pi_bar(f+g) differs from pi_bar(f)*pi_bar(g) below level {level}",
        )
    return total, ZMembershipReport(
        ZVerdict.IN_Z,
        membership.report,
        membership.value,
        note=f"pi_bar(f+g) = pi_bar(f)*pi_bar(g) at levels <= {level}",
    )


def order_ideal_check(c: ExponentMap, d: ExponentMap, z: FactorisationMonoid) -> CheckOutcome:
    """
    Is the smaller map d <= c again in Z(H)?

    PASS iff d is verified in Z(H); FAIL carries the divergence witness of
    its atom-power product.

    Raises:
        OrderViolationError: If d <= c fails
        NotInZError: If c is not verified in Z(H)
    """
    z.check(c, d)
    if not z.le(d, c):
        raise OrderViolationError(f"{z.format(d)} is not below {z.format(c)}")
    _require_in_z(z, c)
    membership = z.pi_bar(d)
    data = {"c": z.format(c), "d": z.format(d)}
    if membership.verdict is ZVerdict.IN_Z:
        return CheckOutcome(
            Outcome.PASS,
            f"{z.format(d)} is in {z.name}",
            report=membership.report,
            limit=membership.value,
            data=data,
        )
    if membership.verdict is ZVerdict.NOT_IN_Z:
        return CheckOutcome(
            Outcome.FAIL,
            f"{z.format(d)} <= {z.format(c)} but is not in {z.name}",
            report=membership.report,
            witness=membership.report.witness,
            data=data,
        )
    return CheckOutcome(Outcome.INCONCLUSIVE, membership.note, report=membership.report, data=data)


def exponent_divides(v: ExponentMap, w: ExponentMap, z: FactorisationMonoid) -> bool:
    """Componentwise v <= w."""
    z.check(v, w)
    return z.le(v, w)


def divisibility_crosscheck(v: ExponentMap, w: ExponentMap, z: FactorisationMonoid) -> CheckOutcome:
    """
    Compare v <= w with divisibility of the images pi_bar(v) | pi_bar(w).

    The two agree on topologically factorial instances; FAIL records a
    pair where they differ.
    """
    image_v, image_w = _require_in_z(z, v, w)
    componentwise = exponent_divides(v, w, z)
    divides = z.ground.divides(image_v.value, image_w.value) is not None
    data = {
        "v": z.format(v),
        "w": z.format(w),
        "componentwise": componentwise,
        "divides": divides,
    }
    if componentwise == divides:
        return CheckOutcome(Outcome.PASS, "componentwise order matches divisibility", data=data)
    return CheckOutcome(
        Outcome.FAIL,
        f"v <= w is {componentwise} but pi_bar(v) | pi_bar(w) is {divides}",
        data=data,
    )


def zh_net_convergence(
    seq: Sequence[ExponentMap], limit: ExponentMap, z: FactorisationMonoid
) -> CheckOutcome:
    """
    Convergence of a finite sequence sample in the initial topology.

    PASS iff the images pi_bar(seq_i) end inside U_k(pi_bar(limit)) for
    every k up to the configured level and every window projection of the
    sequence settles on the projection of the limit.
    """
    if not seq:
        raise ValueError("sequence sample must be non-empty")
    memberships = [z.pi_bar(m) for m in (*seq, limit)]
    if not all(r.in_z for r in memberships):
        return CheckOutcome(Outcome.INCONCLUSIVE, "sequence entries not all verified in Z(H)")
    images, target = [r.value for r in memberships[:-1]], memberships[-1].value
    level = z.params.level
    ground = z.ground

    for k in range(level + 1):
        if not ground.neighborhood_contains(target, k, images[-1]):
            return CheckOutcome(
                Outcome.FAIL,
                f"pi_bar of the sequence leaves U_{k} of the limit",
                data={"image_level": k},
            )
    for a in z.atoms:
        if z.value(seq[-1], a) != z.value(limit, a):
            label = ground.atom_label(a)
            return CheckOutcome(
                Outcome.FAIL,
                f"projection pr_{label} settles at {z.value(seq[-1], a)}, limit has {z.value(limit, a)}",
                data={"projection": label, "value": z.value(seq[-1], a), "expected": z.value(limit, a)},
            )

    def settled(i: int) -> bool:
        return all(z.value(seq[i], a) == z.value(limit, a) for a in z.atoms) and ground.neighborhood_contains(
            target, level, images[i]
        )

    stable_from = len(seq) - 1
    while stable_from > 0 and settled(stable_from - 1):
        stable_from -= 1
    return CheckOutcome(
        Outcome.PASS,
        f"images and projections settle from position {stable_from}",
        limit=limit,
        data={
            "stable_from": stable_from,
            "eventually_constant": all(m == limit for m in seq[stable_from:]),
        },
    )


def zh_atoms_check(z: FactorisationMonoid, bound: SearchBound) -> CheckOutcome:
    """
    Every chi(a) is irreducible in Z(H), and every finitely supported
    window map of total exponent >= 2 splits.
    """
    atoms = z.atom_candidates(bound)
    not_atoms = [m for m in atoms if is_irreducible(z, m, bound).status is not Verdict.YES]
    unsplit = []
    for m in z.window_elements(bound):
        if not m.is_finite or z.size(m) < 2:
            continue
        if is_irreducible(z, m, bound).status is not Verdict.NO:
            unsplit.append(m)
    data = {
        "atoms": [z.atom_label(m) for m in atoms],
        "irreducible_failures": [z.format(m) for m in not_atoms],
        "unsplit": [z.format(m) for m in unsplit],
    }
    if not_atoms or unsplit:
        return CheckOutcome(Outcome.FAIL, "atoms of Z(H) differ from the coordinate maps", data=data)
    return CheckOutcome(
        Outcome.PASS, f"atoms of {z.name} are the {len(atoms)} coordinate maps chi(a)", data=data
    )


def section_samples(m: ExponentMap, z: FactorisationMonoid) -> list[tuple[list[ExponentMap], ExponentMap]]:
    """Sequence samples around m: constant, truncations converging to m,
    and a sequence ending one atom above m (which must not converge to m)."""
    samples: list[tuple[list[ExponentMap], ExponentMap]] = [([m, m, m], m)]
    if m.is_finite:
        support = z.sorted_support(m)
        prefixes = [ExponentMap.of(dict(support[:j])) for j in range(len(support) + 1)]
        samples.append((prefixes, m))
    else:
        depth = len(z.atoms) + z.params.level
        coords = z.coordinates(depth)
        truncations = [
            ExponentMap.of({a: z.value(m, a) for a in coords[:j] if z.value(m, a)})
            for j in range(1, depth + 1)
        ]
        samples.append((truncations, m))
    if z.atoms:
        samples.append(([m, z.combine(m, z.chi(z.atoms[0]))], m))
    return samples


def xi_section_check(
    m: ExponentMap, z: FactorisationMonoid, zz: FactorisationMonoid | None = None
) -> CheckOutcome:
    """
    Xi is a section of the factorisation homomorphism of Z(H):
    pi_bar(Xi(m)) = m, and a sample sequence converges in Z(H) exactly
    when its image under Xi converges in Z(Z(H)).

    Raises:
        NotInZError: If m is not verified in Z(H)
    """
    _require_in_z(z, m)
    zz = zz or FactorisationMonoid(z, z.params)
    image = xi(m, z, zz)
    membership = zz.pi_bar(image)
    data: dict[str, Any] = {"m": z.format(m), "xi": zz.format(image)}
    if not membership.in_z:
        return CheckOutcome(
            Outcome.FAIL, f"Xi(m) is not in {zz.name}", report=membership.report, data=data
        )
    if membership.value != m:
        data["pi_bar"] = z.format(membership.value)
        return CheckOutcome(Outcome.FAIL, "pi_bar(Xi(m)) differs from m", data=data)

    mismatches = []
    samples = section_samples(m, z)
    for seq, limit in samples:
        below = zh_net_convergence(seq, limit, z).passed
        above = zh_net_convergence([xi(g, z, zz) for g in seq], xi(limit, z, zz), zz).passed
        if below != above:
            mismatches.append({"sequence": [z.format(g) for g in seq], "in_z": below, "in_zz": above})
    data["samples"] = len(samples)
    data["mismatches"] = mismatches
    if mismatches:
        return CheckOutcome(Outcome.FAIL, "convergence differs between Z(H) and Z(Z(H))", data=data)
    return CheckOutcome(
        Outcome.PASS, "pi_bar(Xi(m)) = m and convergence is preserved both ways", limit=m, data=data
    )
