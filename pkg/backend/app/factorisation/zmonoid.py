"""The topological factorisation monoid Z(H).

Z(H) is the set of exponent maps m: A(H) -> N whose atom-power product
converges in H. It carries the initial topology of the extended
factorisation homomorphism pi_bar together with the coordinate
projections, realised here as the basis

    U_k(m) = {m' : pi_bar(m') in U_k(pi_bar(m)), m' and m agree on the
              first k atoms}.

FactorisationMonoid is an ordinary TopologicalMonoid, so the bounded
searches and convergence checks run on Z(H) and Z(Z(H)) unchanged.
"""

from __future__ import annotations

import logging
import threading
from itertools import combinations_with_replacement, product
from typing import Any, Iterator

from app.monoid import enumerate_atoms
from app.monoid.base import AtomFamily, TopologicalMonoid
from app.monoid.config import VerificationParams
from app.monoid.errors import (
    ElementParseError,
    InfiniteSupportError,
    NotAnAtomError,
)
from app.monoid.types import DivisorSearch, SearchBound
from app.topology.net import find_limit
from app.topology.stream import FactorStream, StreamEntry
from app.topology.types import (
    Certificate,
    ConvergenceReport,
    ConvergenceStatus,
    DivergenceWitness,
    ExtensionPath,
    WitnessKind,
)
from app.utils.parsing import parse_braced_map, parse_count, split_base_delta

from .exponent_map import ExponentMap, ZMembershipReport, ZVerdict

logger = logging.getLogger(__name__)


class FactorisationMonoid(TopologicalMonoid[ExponentMap]):
    """Z(H) over a ground instance H.

    Atoms of H are taken from the ground window (certified irreducible) and,
    when H has one, from its infinite atom family. Atom order is fixed:
    family atoms by coordinate, then sporadic atoms in window order.
    """

    kind = "z"

    def __init__(self, ground: TopologicalMonoid, params: VerificationParams | None = None):
        self.ground = ground
        self.params = params or VerificationParams()
        self.discrete = ground.discrete
        # Sandwiched partial products stay in Z(H) only when H decimates.
        self.monotone = ground.monotone and ground.allows_arbitrary_decimation
        self._family = ground.atom_family()
        atoms = enumerate_atoms(ground, self.params.bound)
        self._sporadic_rank = {
            a: r for r, a in enumerate(x for x in atoms if self._family_index(x) is None)
        }
        self._atoms = sorted(atoms, key=self.atom_key)
        self._atom_set = frozenset(self._atoms)
        self._labels = {ground.atom_label(a): a for a in self._atoms}
        self._membership: dict[ExponentMap, ZMembershipReport] = {}
        self._lock = threading.Lock()
        logger.debug("Z(%s) built over %d window atoms", ground.name, len(self._atoms))

    # --- Atoms -----------------------------------------------------------

    @property
    def name(self) -> str:
        return f"Z({self.ground.name})"

    @property
    def atoms(self) -> tuple[Any, ...]:
        """Window atoms of the ground instance in atom order."""
        return tuple(self._atoms)

    @property
    def family(self) -> AtomFamily | None:
        return self._family

    def _family_index(self, a: Any) -> int | None:
        return self._family.index_of(a) if self._family is not None else None

    def atom_key(self, a: Any) -> tuple[int, int]:
        i = self._family_index(a)
        if i is not None:
            return (0, i)
        return (1, self._sporadic_rank.get(a, len(self._sporadic_rank)))

    def is_atom(self, a: Any) -> bool:
        return a in self._atom_set or self._family_index(a) is not None

    def chi(self, a: Any) -> ExponentMap:
        """
        The unit coordinate map of an atom.

        Raises:
            NotAnAtomError: If a is not a window atom or family member
        """
        self.ground.check(a)
        if not self.is_atom(a):
            raise NotAnAtomError(f"{self.ground.format(a)} is not an atom of {self.ground.name}")
        return ExponentMap(0, frozenset({(a, 1)}))

    def coordinates(self, level: int) -> list[Any]:
        """The first `level` atoms: window atoms, then family members past the window."""
        coords = list(self._atoms[:level])
        if len(coords) < level and self._family is not None:
            i = 1 + max(
                (self._family_index(a) for a in self._atoms if self._family_index(a) is not None),
                default=-1,
            )
            while len(coords) < level:
                coords.append(self._family.member(i))
                i += 1
        return coords

    # --- Exponent arithmetic ---------------------------------------------

    def value(self, m: ExponentMap, a: Any) -> int:
        """m(a)."""
        base = m.base if self._family_index(a) is not None else 0
        return base + m.as_dict().get(a, 0)

    def le(self, a: ExponentMap, b: ExponentMap) -> bool:
        """Componentwise a <= b."""
        if a.base > b.base and self._family is not None:
            return False
        support = set(a.support) | set(b.support)
        return all(self.value(a, x) <= self.value(b, x) for x in support)

    def sorted_support(self, m: ExponentMap) -> list[tuple[Any, int]]:
        return sorted(m.delta, key=lambda item: self.atom_key(item[0]))

    # --- Identity and encoding -------------------------------------------

    @property
    def identity(self) -> ExponentMap:
        return ExponentMap()

    def owns(self, x: object) -> bool:
        if not isinstance(x, ExponentMap):
            return False
        if x.base and self._family is None:
            return False
        for a, d in x.delta:
            if not self.ground.owns(a) or not self.is_atom(a):
                return False
            if self.value(x, a) < 0 or (d < 0 and self._family_index(a) is None):
                return False
        return True

    def contains(self, x: ExponentMap) -> bool:
        if not self.owns(x):
            return False
        return x.is_finite or self.pi_bar(x).in_z

    def format(self, x: ExponentMap) -> str:
        label = self.ground.atom_label
        if x.is_finite:
            return "{" + ", ".join(f"{label(a)}:{d}" for a, d in self.sorted_support(x)) + "}"
        base = "ones" if x.base == 1 else str(x.base)
        if not x.delta:
            return f"base={base}"
        delta = ", ".join(f"{label(a)}:{d:+d}" for a, d in self.sorted_support(x))
        return f"base={base}; delta={{{delta}}}"

    def parse(self, text: str) -> ExponentMap:
        parts = split_base_delta(text)
        if parts is not None:
            base_text, delta_text, offset = parts
            position = text.find("=") + 1
            base = 1 if base_text.strip() == "ones" else parse_count(base_text, "base", text, position)
        else:
            base, delta_text, offset = 0, text, 0
        mapping: dict[Any, int] = {}
        for key, d in parse_braced_map(delta_text, offset, text):
            if base == 0 and d < 0:
                raise ElementParseError(f"negative exponent for {key}", text, offset)
            mapping[self._atom_by_label(key, text, offset)] = d
        try:
            m = ExponentMap.of(mapping, base)
        except ValueError as e:
            raise ElementParseError(str(e), text, 0) from e
        if not self.owns(m):
            raise ElementParseError(f"not an exponent map over the atoms of {self.ground.name}", text, 0)
        return m

    def _atom_by_label(self, label: str, text: str, position: int) -> Any:
        if label in self._labels:
            return self._labels[label]
        family = self._family
        if family is not None and label.startswith(family.label):
            suffix = label[len(family.label):]
            if suffix.isdigit():
                atom = family.member(int(suffix) - self._label_offset())
                if self.ground.atom_label(atom) == label:
                    return atom
        raise ElementParseError(f"unknown atom {label!r}", text, position)

    def _label_offset(self) -> int:
        """Difference between the number in a family label and the family index."""
        family = self._family
        first = self.ground.atom_label(family.member(0))
        suffix = first[len(family.label):]
        return int(suffix) if suffix.isdigit() else 0

    # --- Algebra ---------------------------------------------------------

    def _combine(self, a: ExponentMap, b: ExponentMap) -> ExponentMap:
        return ExponentMap.of(list(a.delta) + list(b.delta), a.base + b.base)

    def _ambient_divide(self, a: ExponentMap, b: ExponentMap) -> ExponentMap | None:
        if not self.le(a, b):
            return None
        rest = b.as_dict()
        for x, d in a.delta:
            rest[x] = rest.get(x, 0) - d
        return ExponentMap.of(rest, b.base - a.base)

    def _divide(self, a: ExponentMap, b: ExponentMap) -> ExponentMap | None:
        rest = self._ambient_divide(a, b)
        return rest if rest is not None and self.contains(rest) else None

    # --- Factorisation homomorphism --------------------------------------

    def pi_finite(self, m: ExponentMap) -> Any:
        """
        Product of a^m(a) over a finitely supported map.

        Raises:
            InfiniteSupportError: If m has a family base
        """
        self.check(m)
        if not m.is_finite:
            raise InfiniteSupportError(f"{self.format(m)} is not finitely supported; use pi_bar")
        ground = self.ground
        return ground.product(ground.power(a, d) for a, d in self.sorted_support(m))

    def atom_stream(self, m: ExponentMap) -> FactorStream:
        """The atom-power stream of m: sporadic atoms first, then the family
        in coordinate order, each with multiplicity m(a)."""
        ground = self.ground
        label = f"atoms({self.format(m)})"
        if m.is_finite:
            support = self.sorted_support(m)
            return FactorStream.from_factors(
                ground,
                [a for a, _ in support],
                multiplicities=[d for _, d in support],
                label=label,
            )
        family = self._family
        sporadic = [(a, d) for a, d in self.sorted_support(m) if self._family_index(a) is None]
        shifts = {self._family_index(a): d for a, d in m.delta if self._family_index(a) is not None}

        def generate() -> Iterator[StreamEntry]:
            position = 0
            for a, d in sporadic:
                yield StreamEntry(position, a, d)
                position += 1
            i = 0
            while True:
                multiplicity = m.base + shifts.get(i, 0)
                if multiplicity > 0:
                    yield StreamEntry(position, family.member(i), multiplicity)
                    position += 1
                i += 1

        return FactorStream(
            ground, generate, length=None, label=label, ambient_limit=self._ambient_value(m)
        )

    def _ambient_value(self, m: ExponentMap) -> Any:
        ones = self._family.ones_limit
        if ones is None:
            return None
        ground = self.ground
        value = ground.power(ones, m.base)
        for a, d in m.delta:
            if d > 0:
                value = ground.combine(value, ground.power(a, d))
            else:
                value = ground._ambient_divide(ground.power(a, -d), value)
                if value is None:
                    return None
        return value

    def pi_bar(self, m: ExponentMap) -> ZMembershipReport:
        """
        Extended factorisation homomorphism with membership verdict.

        InZ carries the certified limit and its ConvergedAt report; NotInZ
        carries the divergence witness of the atom-power stream.
        """
        self.check(m)
        with self._lock:
            if m in self._membership:
                return self._membership[m]
        membership = self._evaluate(m)
        with self._lock:
            self._membership[m] = membership
        return membership

    def _evaluate(self, m: ExponentMap) -> ZMembershipReport:
        params = self.params
        stream = self.atom_stream(m)
        if m.is_finite:
            # The core is the whole support: no extension remains to check.
            value = self.pi_finite(m)
            entries = stream.take(len(m.delta))
            certificate = Certificate(
                core=tuple(e.index for e in entries),
                level=params.level,
                depth=len(entries),
                path=ExtensionPath.EXHAUSTIVE,
                samples=1,
            )
            report = ConvergenceReport(
                ConvergenceStatus.CONVERGED_AT, certificate=certificate, candidate=value
            )
        else:
            report = find_limit(stream, params)
        if report.converged:
            return ZMembershipReport(ZVerdict.IN_Z, report, report.candidate)
        if report.diverged:
            return ZMembershipReport(
                ZVerdict.NOT_IN_Z, report, note=f"atom-power product diverges: {report.witness.detail}"
            )
        logger.warning("Membership of %s in %s undecided: %s", self.format(m), self.name, report.summary())
        return ZMembershipReport(ZVerdict.INCONCLUSIVE, report, note=report.note)

    # --- Topology --------------------------------------------------------

    def neighborhood_contains(self, center: ExponentMap, level: int, x: ExponentMap) -> bool:
        if center == x:
            return True
        if any(self.value(center, a) != self.value(x, a) for a in self.coordinates(level)):
            return False
        image_center, image_x = self.pi_bar(center), self.pi_bar(x)
        if not (image_center.in_z and image_x.in_z):
            return False
        return self.ground.neighborhood_contains(image_center.value, level, image_x.value)

    def escapes_above(self, candidate: ExponentMap, value: ExponentMap) -> bool:
        return not self.le(value, candidate)

    def divergence_witness(self, stream, params) -> DivergenceWitness | None:
        ambient = stream.ambient_limit
        if ambient is not None and not self.contains(ambient):
            return DivergenceWitness(
                WitnessKind.OUTSIDE_CARRIER,
                f"componentwise limit {self.format(ambient)} is not in {self.name}",
                {"limit": self.format(ambient)},
            )
        image = self.image_stream(stream, params)
        if image is None:
            return None
        from app.topology.divergence import detect_divergence

        return detect_divergence(image, params)

    def image_stream(self, stream: FactorStream, params: VerificationParams) -> FactorStream | None:
        """The stream pushed through pi_bar, when every leading factor is in Z(H)."""
        images = [self.pi_bar(e.factor) for e in stream.take(params.depth)]
        if not all(r.in_z for r in images):
            return None
        ambient = None
        if stream.ambient_limit is not None:
            image_limit = self.pi_bar(stream.ambient_limit)
            ambient = image_limit.value if image_limit.in_z else None

        def generate() -> Iterator[StreamEntry]:
            for entry in _entries(stream):
                image = self.pi_bar(entry.factor)
                if not image.in_z:
                    return
                yield StreamEntry(entry.index, image.value, entry.multiplicity)

        return FactorStream(
            self.ground,
            generate,
            length=stream.length,
            label=f"pi_bar({stream.label})",
            ambient_limit=ambient,
        )

    def propose_limit(self, stream, params) -> ExponentMap | None:
        ambient = stream.ambient_limit
        if ambient is not None and self.contains(ambient):
            return ambient
        return None

    # --- Windows ---------------------------------------------------------

    def size(self, x: ExponentMap) -> int | None:
        if not x.is_finite:
            return None
        return sum(d for _, d in x.delta)

    def weight(self, x: ExponentMap) -> int:
        if x.is_finite:
            return sum(d for _, d in x.delta)
        return x.base + sum(d for _, d in x.delta if d > 0)

    def _finite_maps(self, atoms: list[Any], degree: int) -> list[ExponentMap]:
        maps: list[ExponentMap] = []
        for total in range(1, degree + 1):
            for combo in combinations_with_replacement(atoms, total):
                counts: dict[Any, int] = {}
                for a in combo:
                    counts[a] = counts.get(a, 0) + 1
                maps.append(ExponentMap.of(counts))
        return maps

    def window_elements(self, bound: SearchBound) -> tuple[ExponentMap, ...]:
        atoms = self._atoms[: bound.window]
        elements = self._finite_maps(atoms, bound.degree)
        ones = ExponentMap(base=1)
        if self._family is not None and self.contains(ones):
            elements.append(ones)
            elements.extend(
                m for m in (self._combine(ones, self.chi(a)) for a in atoms) if self.contains(m)
            )
        return tuple(elements)

    def divisor_candidates(self, x: ExponentMap, bound: SearchBound) -> DivisorSearch:
        if x.is_finite:
            support = self.sorted_support(x)
            below = [
                ExponentMap.of(dict(zip((a for a, _ in support), values)))
                for values in product(*[range(d + 1) for _, d in support])
            ]
            proper = tuple(m for m in below if m != x and m.delta)
            return DivisorSearch(candidates=proper, exhaustive=True)
        candidates = tuple(
            a for a in self.window_elements(bound)
            if a != x and self._divide(a, x) is not None
        )
        return DivisorSearch(candidates=candidates, exhaustive=False)

    def atom_candidates(self, bound: SearchBound) -> tuple[ExponentMap, ...]:
        return tuple(self.chi(a) for a in self._atoms)

    def atom_family(self) -> AtomFamily[ExponentMap] | None:
        family = self._family
        if family is None:
            return None

        def index_of(m: ExponentMap) -> int | None:
            if not isinstance(m, ExponentMap) or m.base or len(m.delta) != 1:
                return None
            (a, d), = m.delta
            return self._family_index(a) if d == 1 else None

        return AtomFamily(
            label=f"z_{family.label}",
            member=lambda i: ExponentMap(0, frozenset({(family.member(i), 1)})),
            index_of=index_of,
            ones_limit=ExponentMap(base=1),
        )

    def atom_label(self, a: ExponentMap) -> str:
        if a.is_finite and len(a.delta) == 1:
            (atom, d), = a.delta
            if d == 1:
                return f"z_{self.ground.atom_label(atom)}"
        return self.format(a)

    def describe(self) -> dict[str, object]:
        return {"kind": self.kind, "ground": self.ground.describe()}


def _entries(stream: FactorStream) -> Iterator[StreamEntry]:
    position = 0
    while True:
        chunk = stream.take(position + 1)
        if len(chunk) <= position:
            return
        yield chunk[position]
        position += 1


def factorisation_monoid(
    instance: TopologicalMonoid, params: VerificationParams | None = None
) -> FactorisationMonoid:
    """Z(instance); Z of a Z-instance gives Z(Z(H))."""
    return FactorisationMonoid(instance, params)


def pi_finite(m: ExponentMap, z: FactorisationMonoid) -> Any:
    return z.pi_finite(m)


def pi_bar(m: ExponentMap, z: FactorisationMonoid) -> tuple[ZMembershipReport, Any]:
    """(membership report, limit or None)."""
    report = z.pi_bar(m)
    return report, report.value


def xi(m: ExponentMap, z: FactorisationMonoid, zz: FactorisationMonoid) -> ExponentMap:
    """
    Relabel a -> chi(a): Z(H) into the exponent maps over the atoms of Z(H).

    Args:
        m: Exponent map over A(H)
        z: Z(H)
        zz: Z(Z(H)), built over z
    """
    z.check(m)
    if zz.ground is not z:
        raise ValueError("zz must be built over z")
    image = ExponentMap(m.base, frozenset((z.chi(a), d) for a, d in m.delta))
    zz.check(image)
    return image
