"""Law checks: one executable check per named statement, grouped into
per-instance suites."""

import logging
import random
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Callable, Iterable, Sequence

from app.factorisation import (
    ExponentMap,
    FactorisationMonoid,
    ZVerdict,
    divisibility_crosscheck,
    equivalence_chain_check,
    is_topologically_irreducible,
    order_ideal_check,
    pi_finite,
    topologically_prime_check,
    unique_factorisation_check,
    xi_section_check,
    zh_add,
    zh_atoms_check,
    zh_net_convergence,
)
from app.instances import (
    ONES,
    FreeMonoid,
    HarmonicMonoid,
    IntegersDemo,
    PointwiseSequences,
    QPlus,
    RestrictedSequences,
    SeriesMonoid,
    chi,
)
from app.monoid import (
    Outcome,
    TopologicalMonoid,
    Verdict,
    VerificationParams,
    enumerate_atoms,
    is_irreducible,
    is_prime_bounded,
)
from app.topology import (
    CheckOutcome,
    FactorStream,
    SubsetRule,
    check_arbitrary_decimation,
    check_dissociation,
    check_finite_decimation,
    find_limit,
    finite_span_contains,
    multiset_normal_form,
    normal_form_stream,
    prefix_products,
    separating_level,
    verify_convergence,
)
from app.utils.rationals import denominator_sweep

from .product_service import chi_from, geometric, harmonic_from, nested_expansion

logger = logging.getLogger(__name__)

# Sample sizes
LAW_SAMPLES = 24
NORMAL_FORM_STREAMS = 100
SERIES_STREAMS = 20
DISCRETE_SEQUENCES = 50
XI_SAMPLES = 128

# Geometric series certification
GEOMETRIC_LEVELS = 20
GEOMETRIC_DEPTH = 24

# Levels at which harmonic closure witnesses are checked
HARMONIC_LEVELS = 100

# Positions needed to see nested expansions fill the unit interval
DISSOCIATION_DEPTH = 600


@dataclass
class SuiteContext:
    """Instance and parameters shared by the checks of one suite run.

    The factorisation monoids are built on first use; enumerating atoms is
    the expensive part, so concurrent checks share one copy.
    """

    instance: TopologicalMonoid
    params: VerificationParams
    _z: FactorisationMonoid | None = field(default=None, repr=False)
    _zz: FactorisationMonoid | None = field(default=None, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def kind(self) -> str:
        return self.instance.kind

    @property
    def z(self) -> FactorisationMonoid:
        with self._lock:
            if self._z is None:
                self._z = FactorisationMonoid(self.instance, self.params)
            return self._z

    @property
    def zz(self) -> FactorisationMonoid:
        z = self.z
        with self._lock:
            if self._zz is None:
                self._zz = FactorisationMonoid(z, self.params)
            return self._zz

    def rng(self, law: str) -> random.Random:
        return random.Random(f"{self.params.seed}:{self.kind}:{law}")

    def sample(self, law: str, population: Iterable[Any], count: int = LAW_SAMPLES) -> list[Any]:
        items = list(population)
        if len(items) <= count:
            return items
        return self.rng(law).sample(items, count)


LawCheck = Callable[[SuiteContext], CheckOutcome]


def _verdict(failures: Sequence[Any], detail_pass: str, detail_fail: str, data: dict) -> CheckOutcome:
    if failures:
        return CheckOutcome(Outcome.FAIL, detail_fail, data=data)
    return CheckOutcome(Outcome.PASS, detail_pass, data=data)


def _elements(ctx: SuiteContext) -> list[Any]:
    return [
        x for x in ctx.instance.window_elements(ctx.params.bound) if x != ctx.instance.identity
    ]


# --- Monoid laws ----------------------------------------------------------


def check_identity(ctx: SuiteContext) -> CheckOutcome:
    instance, e = ctx.instance, ctx.instance.identity
    samples = ctx.sample("identity", _elements(ctx))
    bad = [x for x in samples if instance.combine(x, e) != x or instance.combine(e, x) != x]
    return _verdict(
        bad,
        f"x*1 = 1*x = x on {len(samples)} elements",
        f"identity law fails at {instance.format(bad[0]) if bad else ''}",
        {"samples": len(samples)},
    )


def check_commutative(ctx: SuiteContext) -> CheckOutcome:
    instance = ctx.instance
    samples = ctx.sample("commutative", _elements(ctx), 12)
    bad = [
        (a, b) for a, b in combinations(samples, 2)
        if instance.combine(a, b) != instance.combine(b, a)
    ]
    return _verdict(
        bad,
        f"a*b = b*a on {len(samples)} elements",
        "a*b differs from b*a",
        {"samples": len(samples), "failures": len(bad)},
    )


def check_associative(ctx: SuiteContext) -> CheckOutcome:
    instance = ctx.instance
    samples = ctx.sample("associative", _elements(ctx), 8)
    bad = [
        (a, b, c) for a, b, c in combinations(samples, 3)
        if instance.combine(instance.combine(a, b), c) != instance.combine(a, instance.combine(b, c))
    ]
    return _verdict(
        bad,
        f"(a*b)*c = a*(b*c) on {len(samples)} elements",
        "associativity fails",
        {"samples": len(samples), "failures": len(bad)},
    )


def check_cancellative(ctx: SuiteContext) -> CheckOutcome:
    instance = ctx.instance
    samples = ctx.sample("cancellative", _elements(ctx), 12)
    bad = [
        (a, b) for a in samples for b in samples
        if instance.divides(a, instance.combine(a, b)) != b
    ]
    return _verdict(
        bad,
        f"a*b / a = b on {len(samples)} elements",
        "cancellation fails",
        {"samples": len(samples), "failures": len(bad)},
    )


def check_reduced(ctx: SuiteContext) -> CheckOutcome:
    instance = ctx.instance
    samples = ctx.sample("reduced", _elements(ctx))
    bad = [x for x in samples if instance.is_unit(x)]
    return _verdict(
        bad,
        f"no unit among {len(samples)} non-identity elements",
        f"{instance.format(bad[0]) if bad else ''} is a unit",
        {"samples": len(samples)},
    )


def check_hausdorff(ctx: SuiteContext) -> CheckOutcome:
    """Every sampled pair of distinct elements has a separating level."""
    instance, params = ctx.instance, ctx.params
    pairs: list[tuple[Any, Any]] = []
    if isinstance(instance, HarmonicMonoid):
        # Both have weight 0, so no strict ball tells them apart.
        pairs.append((instance.identity, instance.basis(0)))
    samples = ctx.sample("hausdorff", _elements(ctx), 10)
    pairs.extend((instance.identity, x) for x in samples)
    pairs.extend(combinations(samples, 2))
    for x, y in pairs:
        if separating_level(instance, x, y, params.separation_max_level) is None:
            return CheckOutcome(
                Outcome.FAIL,
                f"{instance.format(x)} and {instance.format(y)} share every basic neighbourhood "
                f"up to level {params.separation_max_level}",
                data={"x": instance.format(x), "y": instance.format(y)},
            )
    return CheckOutcome(Outcome.PASS, f"{len(pairs)} pairs separated", data={"pairs": len(pairs)})


# --- Products -------------------------------------------------------------


def _convergent_samples(ctx: SuiteContext) -> list[tuple[FactorStream, Any]]:
    instance = ctx.instance
    if isinstance(instance, QPlus):
        return [(geometric(instance, ["1/2"]), Fraction(1))]
    if isinstance(instance, PointwiseSequences):
        return [(chi_from(instance, []), ONES)]
    return []


def check_normal_form(ctx: SuiteContext) -> CheckOutcome:
    """A product equals the product of its multiset normal form, on seeded
    finite streams and on the convergent infinite samples."""
    instance, params = ctx.instance, ctx.params
    pool = _elements(ctx)
    rng = ctx.rng("normal-form")
    mismatches: list[str] = []
    for _ in range(NORMAL_FORM_STREAMS):
        factors = [rng.choice(pool) for _ in range(rng.randint(1, 6))]
        stream = FactorStream.from_factors(instance, factors)
        form = multiset_normal_form(stream, params.depth, params)
        reduced = normal_form_stream(stream, form)
        whole = instance.product(stream.value(e) for e in stream.take(params.depth))
        collapsed = instance.product(reduced.value(e) for e in reduced.take(params.depth))
        if whole != collapsed:
            mismatches.append(stream.label)

    transferred = 0
    for stream, limit in _convergent_samples(ctx):
        form = multiset_normal_form(stream, params.depth, params)
        reduced = normal_form_stream(stream, form)
        original = verify_convergence(stream, limit, params.level, params.depth, params)
        collapsed = verify_convergence(reduced, limit, params.level, params.depth, params)
        if original.converged != collapsed.converged:
            mismatches.append(f"certification of {stream.label}")
        elif original.converged:
            transferred += 1

    data = {"streams": NORMAL_FORM_STREAMS, "transferred": transferred, "mismatches": mismatches[:5]}
    return _verdict(
        mismatches,
        f"{NORMAL_FORM_STREAMS} finite streams and {transferred} convergent products agree with "
        "their normal forms",
        f"{len(mismatches)} streams differ from their normal form",
        data,
    )


def check_finite_decimation_law(ctx: SuiteContext) -> CheckOutcome:
    instance, params = ctx.instance, ctx.params
    if isinstance(instance, QPlus):
        return check_finite_decimation(geometric(instance, ["1/2"]), [1], params=params)
    return check_finite_decimation(chi_from(instance, []), [0], params=params)


def check_arbitrary_decimation_law(ctx: SuiteContext) -> CheckOutcome:
    instance, params = ctx.instance, ctx.params
    rule = SubsetRule("squares")
    if isinstance(instance, QPlus):
        stream = geometric(instance, ["1/2"])
        outcome = check_arbitrary_decimation(stream, rule, params=params, parent_limit=Fraction(1))
        # Brute-force confirmation of the denominator exclusion.
        sub = stream.select(rule)
        entries = sub.take(params.depth)
        lower = sum((sub.value(e) for e in entries), Fraction(0))
        hit = denominator_sweep(lower, lower + sub.tail_bound(len(entries)), params.qmax)
        outcome.data["sweep"] = "no candidate" if hit is None else str(hit)
        if hit is not None and outcome.outcome is Outcome.FAIL:
            return CheckOutcome(
                Outcome.INCONCLUSIVE,
                f"denominator sweep found {hit} inside the exclusion interval",
                data=outcome.data,
            )
        return outcome
    if isinstance(instance, RestrictedSequences):
        # Sub-products over infinite index sets carry no ambient limit here.
        rule = SubsetRule("cofinite", (0,))
    return check_arbitrary_decimation(chi_from(instance, []), rule, params=params, parent_limit=ONES)


def _pairs_expansion(instance: IntegersDemo):
    def expand(entry):
        k = entry.index + 1
        return FactorStream.from_factors(instance, [k, -k], label=f"pair({k})")

    return expand


def check_dissociation_law(ctx: SuiteContext) -> CheckOutcome:
    instance, params = ctx.instance, ctx.params
    if isinstance(instance, IntegersDemo):
        outer = FactorStream.from_rule(instance, lambda _j: 0, start=0, label="zeros")
        return check_dissociation(outer, _pairs_expansion(instance), params, outer_limit=0)
    outer = geometric(instance, ["1/2"])
    return check_dissociation(
        outer,
        nested_expansion(instance, params.seed),
        params.with_overrides(depth=max(params.depth, DISSOCIATION_DEPTH)),
        outer_limit=Fraction(1),
    )


# --- Atoms and primes -----------------------------------------------------


def check_atoms_irreducible(ctx: SuiteContext) -> CheckOutcome:
    instance, bound = ctx.instance, ctx.params.bound
    atoms = instance.atom_candidates(bound)
    bad = [a for a in atoms if is_irreducible(instance, a, bound).status is not Verdict.YES]
    return _verdict(
        bad,
        f"{len(atoms)} window atoms irreducible",
        f"{instance.format(bad[0]) if bad else ''} is not certified irreducible",
        {"atoms": len(atoms), "failures": [instance.format(a) for a in bad]},
    )


def check_atoms_prime(ctx: SuiteContext) -> CheckOutcome:
    instance, params = ctx.instance, ctx.params
    for a in ctx.z.atoms:
        verdict = is_prime_bounded(instance, a, params.max_factors, params.bound)
        if verdict.status is Verdict.NO:
            product = " * ".join(instance.format(f) for f in verdict.witness)
            return CheckOutcome(
                Outcome.FAIL,
                f"{instance.atom_label(a)} divides {product} but none of its factors",
                data={"atom": instance.atom_label(a), "product": product},
            )
    return CheckOutcome(
        Outcome.PASS,
        f"{len(ctx.z.atoms)} atoms prime for products of at most {params.max_factors} factors",
        data={"atoms": len(ctx.z.atoms)},
    )


def check_atoms_topologically_prime(ctx: SuiteContext) -> CheckOutcome:
    instance, params = ctx.instance, ctx.params
    for a in ctx.z.atoms:
        verdict = topologically_prime_check(a, instance, params=params, z=ctx.z)
        if verdict.status is Verdict.NO:
            label, limit = verdict.witness
            return CheckOutcome(
                Outcome.FAIL,
                f"{instance.atom_label(a)} {verdict.note}",
                data={"atom": instance.atom_label(a), "stream": label, "limit": instance.format(limit)},
            )
    return CheckOutcome(
        Outcome.PASS,
        f"{len(ctx.z.atoms)} atoms topologically prime on the atom products",
        data={"atoms": len(ctx.z.atoms)},
    )


def check_prime_irreducible(ctx: SuiteContext) -> CheckOutcome:
    """Every finite split of x is a product x divides while dividing neither
    factor, so no reducible element is prime."""
    instance, params = ctx.instance, ctx.params
    samples = ctx.sample("prime-irreducible", _elements(ctx), 12)
    splits = 0
    for x in samples:
        verdict = is_irreducible(instance, x, params.bound)
        if verdict.status is not Verdict.NO:
            continue
        a, b = verdict.witness
        splits += 1
        if instance.divides(x, a) is not None or instance.divides(x, b) is not None:
            return CheckOutcome(
                Outcome.FAIL,
                f"{instance.format(x)} = {instance.format(a)} * {instance.format(b)} divides a factor",
                data={"element": instance.format(x)},
            )
    return CheckOutcome(
        Outcome.PASS,
        f"{splits} of {len(samples)} elements split and none of them is prime",
        data={"samples": len(samples), "splits": splits},
    )


def check_topological_irreducibility(ctx: SuiteContext) -> CheckOutcome:
    """Topological and finite irreducibility agree on the window."""
    instance, params = ctx.instance, ctx.params
    samples = ctx.sample("topological-irreducibility", _elements(ctx), 8)
    if isinstance(instance, RestrictedSequences):
        samples.insert(0, ONES)
    compared = 0
    for x in samples:
        finite = is_irreducible(instance, x, params.bound)
        if finite.status is not Verdict.YES:
            continue
        compared += 1
        verdict = is_topologically_irreducible(x, instance, params=params, z=ctx.z)
        if verdict.status is Verdict.NO:
            (label,) = verdict.witness
            return CheckOutcome(
                Outcome.FAIL,
                f"{instance.format(x)} is irreducible but is the limit of {label}",
                data={"element": instance.format(x), "stream": label},
            )
    return CheckOutcome(
        Outcome.PASS,
        f"{compared} irreducible window elements admit no convergent decomposition",
        data={"samples": len(samples), "irreducible": compared},
    )


def check_unique_factorisation(ctx: SuiteContext) -> CheckOutcome:
    instance, params = ctx.instance, ctx.params
    samples = [x for x in _elements(ctx) if instance.size(x) is not None]
    samples = ctx.sample("unique-factorisation", samples, 12)
    if isinstance(instance, RestrictedSequences):
        samples.insert(0, ONES)
    counts = {Outcome.PASS: 0, Outcome.INCONCLUSIVE: 0}
    for b in samples:
        outcome = unique_factorisation_check(b, instance, params, ctx.z)
        if outcome.outcome is Outcome.FAIL:
            return CheckOutcome(
                Outcome.FAIL,
                f"{instance.format(b)}: {outcome.detail}",
                data=outcome.data,
            )
        counts[outcome.outcome] += 1
    data = {"unique": counts[Outcome.PASS], "undecided": counts[Outcome.INCONCLUSIVE]}
    if counts[Outcome.INCONCLUSIVE]:
        return CheckOutcome(Outcome.INCONCLUSIVE, "some elements have no factorisation in the window", data=data)
    return CheckOutcome(Outcome.PASS, f"{len(samples)} elements factor uniquely", data=data)


# --- Instance-specific statements -------------------------------------------


def check_free_factorial(ctx: SuiteContext) -> CheckOutcome:
    """pi restricted to window maps is a bijection onto the window elements."""
    instance, z, bound = ctx.instance, ctx.z, ctx.params.bound
    maps = [m for m in z.window_elements(bound) if m.is_finite and m != z.identity]
    images = [pi_finite(m, z) for m in maps]
    elements = set(instance.window_elements(bound))
    data = {"maps": len(maps), "elements": len(elements), "images": len(set(images))}
    if len(set(images)) != len(maps):
        return CheckOutcome(Outcome.FAIL, "pi is not injective on window maps", data=data)
    if set(images) != elements:
        return CheckOutcome(Outcome.FAIL, "pi does not reach every window element", data=data)
    return CheckOutcome(
        Outcome.PASS, f"pi is a bijection between {len(maps)} maps and elements", data=data
    )


def check_discrete_products(ctx: SuiteContext) -> CheckOutcome:
    instance, params = ctx.instance, ctx.params
    samples = ctx.sample("discrete-products", _elements(ctx), 6)
    for x in samples:
        stream = FactorStream.from_rule(
            instance, lambda _j, x=x: x, start=0, label=f"const({instance.format(x)})"
        )
        if not find_limit(stream, params).diverged:
            return CheckOutcome(Outcome.FAIL, f"{stream.label} is not shown divergent")
    gens = instance.atom_candidates(params.bound)
    cycling = FactorStream.from_rule(
        instance, lambda j: gens[j % len(gens)], start=0, label="cycle(generators)"
    )
    if not find_limit(cycling, params).diverged:
        return CheckOutcome(Outcome.FAIL, "cycling generator product is not shown divergent")
    finite = FactorStream.from_factors(instance, samples)
    report = find_limit(finite, params)
    if not report.converged:
        return CheckOutcome(Outcome.FAIL, f"finite product {finite.label} not certified")
    return CheckOutcome(
        Outcome.PASS,
        f"{len(samples) + 1} infinite products diverge, finite products converge",
        data={"infinite": len(samples) + 1},
    )


def check_geometric_sum(ctx: SuiteContext) -> CheckOutcome:
    instance = ctx.instance
    stream = geometric(instance, ["1/2"])
    missing = [
        k for k in range(1, GEOMETRIC_LEVELS + 1)
        if not verify_convergence(stream, Fraction(1), k, GEOMETRIC_DEPTH, ctx.params).converged
    ]
    partial = prefix_products(stream, GEOMETRIC_DEPTH)[-1]
    data = {"levels": GEOMETRIC_LEVELS, "depth": GEOMETRIC_DEPTH, "partial": str(partial)}
    if partial != 1 - Fraction(1, 2**GEOMETRIC_DEPTH):
        return CheckOutcome(Outcome.FAIL, f"partial sum is {partial}", data=data)
    return _verdict(
        missing,
        f"converges to 1 at every level <= {GEOMETRIC_LEVELS}",
        f"not certified at level {missing[0] if missing else ''}",
        data,
    )


def check_atomless(ctx: SuiteContext) -> CheckOutcome:
    instance, bound = ctx.instance, ctx.params.bound
    atoms = enumerate_atoms(instance, bound)
    unsplit = [
        x for x in instance.window_elements(bound)
        if is_irreducible(instance, x, bound).status is not Verdict.NO
    ]
    data = {"atoms": [instance.format(a) for a in atoms], "unsplit": [instance.format(x) for x in unsplit]}
    return _verdict(
        atoms or unsplit,
        "every window element splits as x/2 + x/2",
        "window element without a split",
        data,
    )


def check_harmonic_closure(ctx: SuiteContext) -> CheckOutcome:
    instance = ctx.instance
    e0 = instance.basis(0)
    for k in range(HARMONIC_LEVELS + 1):
        n = instance.closure_witness(k)
        if not instance.neighborhood_contains(e0, k, instance.basis(n)):
            return CheckOutcome(Outcome.FAIL, f"e{n} is not in U_{k}(e0)", data={"level": k})
        if instance.neighborhood_contains(e0, k, instance.basis(n - 1)):
            return CheckOutcome(Outcome.FAIL, f"closure witness at level {k} is not minimal", data={"level": k})
    return CheckOutcome(
        Outcome.PASS,
        f"e_(2^k+1) enters U_k(e0) for every k <= {HARMONIC_LEVELS}",
        data={"levels": HARMONIC_LEVELS, "witness_at_10": instance.closure_witness(10)},
    )


def check_harmonic_span(ctx: SuiteContext) -> CheckOutcome:
    """No product over e_1, e_2, ... is certified to converge to e0."""
    instance, params = ctx.instance, ctx.params
    e0 = instance.basis(0)
    gens = [instance.basis(i) for i in range(1, instance.window + 1)]
    streams = [harmonic_from(instance, ["1"]), harmonic_from(instance, ["2"])]
    streams.extend(FactorStream.from_factors(instance, [g]) for g in gens[:4])
    streams.append(FactorStream.from_factors(instance, gens))
    statuses: dict[str, str] = {}
    for stream in streams:
        report = verify_convergence(stream, e0, params.level, params.depth, params)
        statuses[stream.label] = report.status.value
        if report.converged:
            return CheckOutcome(
                Outcome.PASS, f"{stream.label} converges to e0", report=report, data={"stream": stream.label}
            )
    span = finite_span_contains(instance, gens, e0, params.degree)
    data = {"streams": len(streams), "finite_span": span.status.value}
    return CheckOutcome(
        Outcome.FAIL,
        "every product over e_1, e_2, ... has positive weight; e0 is not in the topological span",
        data=data,
    )


def check_almost_discrete(ctx: SuiteContext) -> CheckOutcome:
    instance, params = ctx.instance, ctx.params
    pool = _elements(ctx)
    rng = ctx.rng("almost-discrete")
    for i in range(SERIES_STREAMS):
        factors = [rng.choice(pool) for _ in range(rng.randint(2, 5))]
        finite = FactorStream.from_factors(instance, factors)
        valuations = [instance.valuation(p) for p in prefix_products(finite, len(factors))]
        if any(b <= a for a, b in zip(valuations, valuations[1:])):
            return CheckOutcome(Outcome.FAIL, f"valuations of {finite.label} do not increase")
        if not find_limit(finite, params).converged:
            return CheckOutcome(Outcome.FAIL, f"finite product {finite.label} not certified")
        seed = f"{params.seed}:almost-discrete:{i}"
        infinite = FactorStream.from_rule(
            instance,
            lambda j, seed=seed: random.Random(f"{seed}:{j}").choice(pool),
            start=0,
            label=f"random({i})",
        )
        report = find_limit(infinite, params)
        if report.converged:
            return CheckOutcome(
                Outcome.FAIL, f"infinite product {infinite.label} certified", report=report
            )
    return CheckOutcome(
        Outcome.PASS,
        f"{SERIES_STREAMS} finite products certified, {SERIES_STREAMS} infinite products not",
        data={"streams": SERIES_STREAMS},
    )


def check_not_discrete(ctx: SuiteContext) -> CheckOutcome:
    instance = ctx.instance
    pool = _elements(ctx)
    rng = ctx.rng("not-discrete")
    distinct = 0
    for _ in range(LAW_SAMPLES):
        x = instance.combine(rng.choice(pool), rng.choice(pool))
        for k in range(1, instance.precision):
            t = instance.truncation(x, k)
            if not instance.neighborhood_contains(x, k, t):
                return CheckOutcome(
                    Outcome.FAIL, f"truncation of {instance.format(x)} leaves U_{k}", data={"level": k}
                )
            if t != x:
                distinct += 1
    data = {"samples": LAW_SAMPLES, "distinct_truncations": distinct}
    if not distinct:
        return CheckOutcome(Outcome.INCONCLUSIVE, "every sampled series equals its truncations", data=data)
    return CheckOutcome(Outcome.PASS, "series are limits of distinct polynomial truncations", data=data)


def check_all_ones(ctx: SuiteContext) -> CheckOutcome:
    report = find_limit(chi_from(ctx.instance, []), ctx.params)
    if report.converged and report.candidate == ONES:
        return CheckOutcome(Outcome.PASS, report.summary(), report=report, limit=ONES)
    if report.diverged:
        return CheckOutcome(Outcome.FAIL, report.summary(), report=report, witness=report.witness)
    return CheckOutcome(Outcome.INCONCLUSIVE, report.summary(), report=report)


def check_window_atoms(ctx: SuiteContext) -> CheckOutcome:
    instance, bound = ctx.instance, ctx.params.bound
    found = enumerate_atoms(instance, bound)
    expected = [chi(i) for i in range(min(instance.window, bound.window))] + [ONES]
    data = {"atoms": [instance.atom_label(a) for a in found]}
    if set(found) != set(expected):
        return CheckOutcome(Outcome.FAIL, "window atoms differ from chi_i and f", data=data)
    return CheckOutcome(Outcome.PASS, f"{len(found)} window atoms: chi_0..chi_{len(expected) - 2} and f", data=data)


def check_chi_not_divisor(ctx: SuiteContext) -> CheckOutcome:
    instance = ctx.instance
    converged = find_limit(chi_from(instance, []), ctx.params).converged
    divides = instance.divides(chi(0), ONES) is not None
    data = {"all_ones_converges": converged, "chi0_divides_f": divides}
    if converged and not divides:
        return CheckOutcome(Outcome.PASS, "f is the product of all chi_i and chi_0 does not divide f", data=data)
    return CheckOutcome(Outcome.FAIL, "chi_0 divides f or the all-ones product fails", data=data)


def check_f_irreducible(ctx: SuiteContext) -> CheckOutcome:
    verdict = is_irreducible(ctx.instance, ONES, ctx.params.bound)
    if verdict.status is Verdict.YES:
        return CheckOutcome(Outcome.PASS, "f admits no split into non-units")
    if verdict.status is Verdict.NO:
        a, b = verdict.witness
        return CheckOutcome(
            Outcome.FAIL, f"f = {ctx.instance.format(a)} * {ctx.instance.format(b)}"
        )
    return CheckOutcome(Outcome.INCONCLUSIVE, verdict.note)


def check_f_prime(ctx: SuiteContext) -> CheckOutcome:
    params = ctx.params
    verdict = is_prime_bounded(ctx.instance, ONES, params.max_factors, params.bound)
    if verdict.status is Verdict.YES:
        return CheckOutcome(Outcome.PASS, verdict.note, data={"max_factors": params.max_factors})
    return CheckOutcome(
        Outcome.FAIL,
        "f divides " + " * ".join(ctx.instance.format(a) for a in verdict.witness),
        data={"max_factors": params.max_factors},
    )


# --- Z(H) -----------------------------------------------------------------


def _z_window(ctx: SuiteContext, degree: int = 4) -> list[ExponentMap]:
    bound = ctx.params.bound
    bound = type(bound)(window=bound.window, degree=min(bound.degree, degree))
    return [m for m in ctx.z.window_elements(bound) if m.is_finite]


def check_z_homomorphism(ctx: SuiteContext) -> CheckOutcome:
    z = ctx.z
    maps = _z_window(ctx)
    bad = []
    for i, f in enumerate(maps):
        for g in maps[i:]:
            _, membership = zh_add(f, g, z)
            if membership.verdict is not ZVerdict.IN_Z:
                bad.append(f"{z.format(f)} + {z.format(g)}")
    pairs = len(maps) * (len(maps) + 1) // 2
    return _verdict(
        bad,
        f"pi_bar is additive on {pairs} window pairs",
        f"pi_bar is not additive on {bad[0] if bad else ''}",
        {"pairs": pairs, "failures": len(bad)},
    )


def check_z_order_ideal(ctx: SuiteContext) -> CheckOutcome:
    z = ctx.z
    ones = ExponentMap(base=1)
    first = z.family.member(0)
    return order_ideal_check(ones, ExponentMap.of({first: -1}, base=1), z)


def check_z_divisibility_order(ctx: SuiteContext) -> CheckOutcome:
    z = ctx.z
    ones = ExponentMap(base=1)
    pairs = [(z.chi(z.family.member(0)), ones)]
    maps = ctx.sample("z-divisibility-order", _z_window(ctx, 3), 8)
    pairs.extend(combinations(maps, 2))
    for v, w in pairs:
        outcome = divisibility_crosscheck(v, w, z)
        if outcome.outcome is not Outcome.PASS:
            return outcome
    return CheckOutcome(Outcome.PASS, f"order matches divisibility on {len(pairs)} pairs", data={"pairs": len(pairs)})


def check_z_atoms(ctx: SuiteContext) -> CheckOutcome:
    return zh_atoms_check(ctx.z, ctx.params.bound)


def check_z_discrete(ctx: SuiteContext) -> CheckOutcome:
    """Sequences converging in Z(H) of a discrete H are eventually constant."""
    z = ctx.z
    if not z.discrete:
        return CheckOutcome(Outcome.FAIL, f"{z.name} is not flagged discrete")
    maps = _z_window(ctx, 3)
    rng = ctx.rng("z-discrete")
    passed = 0
    for _ in range(DISCRETE_SEQUENCES):
        limit = rng.choice(maps)
        head = [rng.choice(maps) for _ in range(rng.randint(0, 4))]
        seq = head + [limit] * rng.randint(1, 3)
        outcome = zh_net_convergence(seq, limit, z)
        if outcome.outcome is Outcome.PASS:
            passed += 1
            if not outcome.data["eventually_constant"]:
                return CheckOutcome(
                    Outcome.FAIL,
                    "convergent sequence is not eventually constant",
                    data={"sequence": [z.format(m) for m in seq]},
                )
    return CheckOutcome(
        Outcome.PASS,
        f"{passed} convergent sequences of {DISCRETE_SEQUENCES} are eventually constant",
        data={"sequences": DISCRETE_SEQUENCES, "convergent": passed},
    )


def check_z_inverse_continuous(ctx: SuiteContext) -> CheckOutcome:
    """chi(e_(2^k+1)) has images converging to e0 = pi_bar(chi(e0)), but the
    e0-projection of the sequence stays 0."""
    instance, z, level = ctx.instance, ctx.z, ctx.params.level
    e0 = instance.basis(0)
    seq = [z.chi(instance.basis(instance.closure_witness(k))) for k in range(level + 1)]
    outcome = zh_net_convergence(seq, z.chi(e0), z)
    images = all(
        instance.neighborhood_contains(e0, k, instance.basis(instance.closure_witness(k)))
        for k in range(level + 1)
    )
    outcome.data["images_converge"] = images
    if outcome.outcome is Outcome.FAIL and images:
        return CheckOutcome(
            Outcome.FAIL,
            f"images converge to e0 but {outcome.detail}",
            data=outcome.data,
        )
    return outcome


def check_z_xi_section(ctx: SuiteContext) -> CheckOutcome:
    z, zz = ctx.z, ctx.zz
    samples = ctx.sample(
        "z-xi-section", [m for m in _z_window(ctx) if m != z.identity], XI_SAMPLES
    )
    if z.family is not None and z.contains(ExponentMap(base=1)):
        samples.append(ExponentMap(base=1))
    for m in samples:
        outcome = xi_section_check(m, z, zz)
        if outcome.outcome is not Outcome.PASS:
            return outcome
    return CheckOutcome(Outcome.PASS, f"Xi is a section on {len(samples)} maps", data={"maps": len(samples)})


def check_z_unique_factorisation(ctx: SuiteContext) -> CheckOutcome:
    z, zz, params = ctx.z, ctx.zz, ctx.params
    samples = [m for m in _z_window(ctx, 3) if m != z.identity]
    for m in samples:
        outcome = unique_factorisation_check(m, z, params, zz)
        if outcome.outcome is not Outcome.PASS:
            return outcome
    return CheckOutcome(
        Outcome.PASS, f"{len(samples)} maps factor uniquely in {z.name}", data={"maps": len(samples)}
    )


def check_z_equivalence_chain(ctx: SuiteContext) -> CheckOutcome:
    return equivalence_chain_check(ctx.z, ctx.params, ctx.zz)


LAWS: dict[str, LawCheck] = {
    "identity": check_identity,
    "commutative": check_commutative,
    "associative": check_associative,
    "cancellative": check_cancellative,
    "reduced": check_reduced,
    "hausdorff": check_hausdorff,
    "normal-form": check_normal_form,
    "finite-decimation": check_finite_decimation_law,
    "arbitrary-decimation": check_arbitrary_decimation_law,
    "dissociation": check_dissociation_law,
    "atoms-irreducible": check_atoms_irreducible,
    "atoms-prime": check_atoms_prime,
    "atoms-topologically-prime": check_atoms_topologically_prime,
    "prime-irreducible": check_prime_irreducible,
    "topological-irreducibility": check_topological_irreducibility,
    "unique-factorisation": check_unique_factorisation,
    "free-factorial": check_free_factorial,
    "discrete-products": check_discrete_products,
    "geometric-sum": check_geometric_sum,
    "atomless": check_atomless,
    "harmonic-closure": check_harmonic_closure,
    "harmonic-span": check_harmonic_span,
    "almost-discrete": check_almost_discrete,
    "not-discrete": check_not_discrete,
    "all-ones": check_all_ones,
    "window-atoms": check_window_atoms,
    "chi-not-divisor": check_chi_not_divisor,
    "f-irreducible": check_f_irreducible,
    "f-prime": check_f_prime,
    "z-homomorphism": check_z_homomorphism,
    "z-order-ideal": check_z_order_ideal,
    "z-divisibility-order": check_z_divisibility_order,
    "z-atoms": check_z_atoms,
    "z-discrete": check_z_discrete,
    "z-inverse-continuous": check_z_inverse_continuous,
    "z-xi-section": check_z_xi_section,
    "z-unique-factorisation": check_z_unique_factorisation,
    "z-equivalence-chain": check_z_equivalence_chain,
}

COMMON_LAWS = (
    "identity",
    "commutative",
    "associative",
    "cancellative",
    "reduced",
    "hausdorff",
    "normal-form",
    "atoms-irreducible",
    "prime-irreducible",
)

SUITES: dict[str, tuple[str, ...]] = {
    FreeMonoid.kind: COMMON_LAWS + (
        "free-factorial",
        "discrete-products",
        "atoms-prime",
        "atoms-topologically-prime",
        "topological-irreducibility",
        "unique-factorisation",
        "z-homomorphism",
        "z-atoms",
        "z-discrete",
        "z-xi-section",
        "z-unique-factorisation",
        "z-equivalence-chain",
    ),
    QPlus.kind: COMMON_LAWS + (
        "geometric-sum",
        "atomless",
        "topological-irreducibility",
        "finite-decimation",
        "arbitrary-decimation",
        "dissociation",
    ),
    HarmonicMonoid.kind: COMMON_LAWS + (
        "harmonic-closure",
        "harmonic-span",
        "z-inverse-continuous",
    ),
    SeriesMonoid.kind: COMMON_LAWS + ("almost-discrete", "not-discrete"),
    PointwiseSequences.kind: COMMON_LAWS + (
        "all-ones",
        "finite-decimation",
        "arbitrary-decimation",
        "atoms-prime",
        "atoms-topologically-prime",
        "topological-irreducibility",
        "z-order-ideal",
        "z-divisibility-order",
    ),
    RestrictedSequences.kind: COMMON_LAWS + (
        "window-atoms",
        "all-ones",
        "chi-not-divisor",
        "f-irreducible",
        "f-prime",
        "atoms-prime",
        "atoms-topologically-prime",
        "topological-irreducibility",
        "finite-decimation",
        "arbitrary-decimation",
        "unique-factorisation",
        "z-order-ideal",
        "z-divisibility-order",
        "z-atoms",
        "z-xi-section",
    ),
}


def get_law(name: str) -> LawCheck:
    law = LAWS.get(name)
    if law is None:
        raise ValueError(f"Unknown law: {name}")
    return law
