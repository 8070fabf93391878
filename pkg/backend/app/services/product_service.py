"""Stream construction from generator rules, and product evaluation."""

import logging
import random
from fractions import Fraction
from typing import Callable

from app.instances import HarmonicMonoid, IntegersDemo, PointwiseSequences, QPlus, SequenceElement, chi
from app.models.report import ProductReport
from app.models.stream_spec import StreamSpec
from app.monoid import TopologicalMonoid, VerificationParams, make_instance
from app.monoid.errors import ElementParseError, FiniteMultiplicityError
from app.topology import (
    FactorStream,
    StreamEntry,
    SubsetRule,
    find_limit,
    multiset_normal_form,
    verify_convergence,
)

logger = logging.getLogger(__name__)

RuleBuilder = Callable[[TopologicalMonoid, list[str]], FactorStream]


def _expect(instance: TopologicalMonoid, kind: type, rule: str) -> None:
    if not isinstance(instance, kind):
        raise ElementParseError(f"rule {rule} is not available on {instance.name}", rule, 0)


def geometric(instance: TopologicalMonoid, args: list[str]) -> FactorStream:
    """r, r^2, r^3, ... (indices 1, 2, ...) with exact tail bounds and limit r/(1-r)."""
    _expect(instance, QPlus, "geometric")
    try:
        ratio = Fraction(args[0]) if args else Fraction(1, 2)
    except (ValueError, ZeroDivisionError) as e:
        raise ElementParseError(f"bad ratio {args[0]!r}", args[0], 0) from e
    if not 0 < ratio < 1:
        raise ElementParseError("ratio must lie strictly between 0 and 1", args[0], 0)
    return FactorStream.from_rule(
        instance,
        lambda k: ratio**k,
        start=1,
        label=f"geometric({ratio})",
        tail_bound=lambda n: ratio ** (n + 1) / (1 - ratio),
        ambient_limit=ratio / (1 - ratio),
    )


def chi_from(instance: TopologicalMonoid, args: list[str], rule: str = "chi-from") -> FactorStream:
    """chi_m, chi_{m+1}, ...; the ambient limit is f minus chi_0..chi_{m-1}."""
    _expect(instance, PointwiseSequences, rule)
    start = int(args[0]) if args else 0
    ambient = SequenceElement.of(1, {i: -1 for i in range(start)})
    label = "chi-all" if start == 0 else f"chi-from({start})"
    return FactorStream.from_rule(instance, chi, start=start, label=label, ambient_limit=ambient)


def chi_all(instance: TopologicalMonoid, args: list[str]) -> FactorStream:
    """chi_0, chi_1, ... with ambient limit f."""
    return chi_from(instance, [], rule="chi-all")


def harmonic_from(instance: TopologicalMonoid, args: list[str]) -> FactorStream:
    """e_m, e_{m+1}, ..."""
    _expect(instance, HarmonicMonoid, "harmonic-from")
    start = int(args[0]) if args else 1
    return FactorStream.from_rule(
        instance,
        instance.basis,
        start=start,
        label=f"harmonic-from({start})",
        growth_floor=harmonic_floor(start),
    )


def harmonic_floor(start: int) -> Callable[[int], Fraction]:
    """Lower bound of phi over e_start, ..., e_(start+n-1).

    The sum of 1/i over a <= i < b is at least ln(b/a), and ln 2 > 1/2, so it
    is at least t/2 where 2^t <= b/a.
    """
    first = max(start, 1)
    skipped = first - start

    def floor(n: int) -> Fraction:
        count = n - skipped
        if count <= 0:
            return Fraction(0)
        return Fraction(((first + count) // first).bit_length() - 1, 2)

    return floor


def const(instance: TopologicalMonoid, args: list[str]) -> FactorStream:
    """x, x, x, ..."""
    x = instance.parse(args[0])
    return FactorStream.from_rule(
        instance, lambda _j: x, start=0, label=f"const({instance.format(x)})"
    )


def powers(instance: TopologicalMonoid, args: list[str]) -> FactorStream:
    """x, x^2, x^3, ...; on ordered additive instances the partial sums are
    exactly order(x) * n(n+1)/2."""
    x = instance.parse(args[0])
    floor = None
    if isinstance(instance, (QPlus, HarmonicMonoid)) and instance.order_value(x) > 0:
        unit = instance.order_value(x)

        def floor(n: int) -> Fraction:
            return unit * n * (n + 1) / 2

    return FactorStream.from_rule(
        instance,
        lambda j: instance.power(x, j),
        start=1,
        label=f"powers({instance.format(x)})",
        growth_floor=floor,
    )


def pairs(instance: TopologicalMonoid, args: list[str]) -> FactorStream:
    """1, -1, 2, -2, ... on the integers demo."""
    _expect(instance, IntegersDemo, "pairs")
    return FactorStream.from_rule(
        instance,
        lambda j: (j // 2 + 1) * (1 if j % 2 == 0 else -1),
        start=0,
        label="pairs",
    )


RULES: dict[str, RuleBuilder] = {
    "geometric": geometric,
    "chi-all": chi_all,
    "chi-from": chi_from,
    "harmonic-from": harmonic_from,
    "const": const,
    "powers": powers,
    "pairs": pairs,
}


def build_stream(instance: TopologicalMonoid, rule: str) -> FactorStream:
    """
    Build a stream from rule text such as `geometric(1/2)` or `chi-from(1)`.

    Raises:
        ElementParseError: For unknown rules or bad arguments
    """
    spec = StreamSpec(instance=instance.kind, rule=rule)
    builder = RULES.get(spec.rule_name)
    if builder is None:
        raise ElementParseError(
            f"unknown rule {spec.rule_name!r} (known: {', '.join(RULES)})", rule, 0
        )
    return builder(instance, spec.rule_args)


def stream_from_spec(spec: StreamSpec, instance: TopologicalMonoid) -> FactorStream:
    if spec.factors is not None:
        factors = [instance.parse(text) for text in spec.factors]
        stream = FactorStream.from_factors(instance, factors)
    else:
        stream = build_stream(instance, spec.rule)
    if spec.subset is not None:
        stream = stream.select(SubsetRule.parse(spec.subset))
    return stream


def nested_expansion(instance: QPlus, seed: int) -> Callable[[StreamEntry], FactorStream]:
    """Expand each factor a into a(1-r), a(1-r)r, a(1-r)r^2, ... with r
    drawn per factor from {1/2, 1/3, 1/4} by a seeded generator."""
    ratios = (Fraction(1, 2), Fraction(1, 3), Fraction(1, 4))

    def expand(entry: StreamEntry) -> FactorStream:
        value = instance.power(entry.factor, entry.multiplicity)
        r = random.Random(f"{seed}:{entry.index}").choice(ratios)
        return FactorStream.from_rule(
            instance,
            lambda l: value * (1 - r) * r**l,
            start=0,
            label=f"nested({value}, {r})",
            tail_bound=lambda n: value * r**n,
            ambient_limit=value,
        )

    return expand


def eval_product(spec: StreamSpec, params: VerificationParams) -> ProductReport:
    """
    Evaluate the stream described by spec: convergence report against the
    candidate (or the best pool candidate) and the multiset normal form.
    """
    instance = make_instance(spec.instance, **spec.params)
    params = params.with_overrides(level=spec.level, depth=spec.depth)
    stream = stream_from_spec(spec, instance)
    if spec.candidate is not None:
        candidate = instance.parse(spec.candidate)
        report = verify_convergence(stream, candidate, params.level, params.depth, params)
    else:
        report = find_limit(stream, params)
    try:
        form = multiset_normal_form(stream, params.depth, params)
        normal_form = [
            f"{instance.format(h)}^{m}" if m > 1 else instance.format(h) for h, m in form.counts
        ]
        complete = form.complete
    except FiniteMultiplicityError as e:
        logger.info("No normal form for %s: %s", stream.label, e)
        normal_form, complete = [], False
    candidate_text = instance.format(report.candidate) if report.candidate is not None else None
    return ProductReport(
        instance=instance.describe(),
        stream=stream.label,
        level=params.level,
        depth=params.depth,
        candidate=candidate_text,
        status=report.status.value,
        summary=report.summary(),
        normal_form=normal_form,
        normal_form_complete=complete,
    )
