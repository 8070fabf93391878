"""Divergence detection strategies."""

from __future__ import annotations

import logging
from collections import Counter
from fractions import Fraction
from typing import Sequence, TypeVar

from app.monoid.base import TopologicalMonoid
from app.monoid.config import VerificationParams
from app.monoid.errors import UnitElementError

from .stream import FactorStream
from .types import DivergenceWitness, WitnessKind

logger = logging.getLogger(__name__)

E = TypeVar("E")


def detect_divergence(
    stream: FactorStream[E], params: VerificationParams
) -> DivergenceWitness | None:
    """
    Re-checkable evidence that no element of the instance is the limit.

    Finite streams always converge. For infinite ones, a factor repeated
    beyond the finiteness threshold is reported first; the instance's own
    strategy (unbounded coordinates, valuation escape, denominator
    exclusion, limit outside the carrier) is consulted next.
    """
    if stream.is_finite:
        return None
    witness = repeated_factor(stream, params)
    if witness is None:
        witness = stream.instance.divergence_witness(stream, params)
    if witness is not None:
        logger.debug("Divergence of %s: %s", stream.label, witness.kind.value)
    return witness


def repeated_factor(
    stream: FactorStream[E], params: VerificationParams
) -> DivergenceWitness | None:
    """A non-identity factor occurring more often than the finiteness
    threshold within the depth: no element can occur infinitely often in a
    convergent product, and powers of a non-unit diverge."""
    instance = stream.instance
    counts: Counter = Counter()
    for entry in stream.take(params.depth):
        if entry.factor != instance.identity:
            counts[entry.factor] += entry.multiplicity
    if not counts:
        return None
    factor, count = max(counts.items(), key=lambda item: item[1])
    if count <= params.repetition_threshold:
        return None
    return DivergenceWitness(
        WitnessKind.UNBOUNDED,
        f"factor {instance.format(factor)} repeats {count} times within depth {params.depth}",
        {"factor": instance.format(factor), "count": count, "threshold": params.repetition_threshold},
    )


def growth_floor_witness(
    stream: FactorStream[E], values: Sequence[Fraction]
) -> DivergenceWitness | None:
    """Unbounded partial sums from the stream's growth floor.

    The floor is supplied by the generator rule as a proven lower bound on
    the order-value sum over the first n positions that grows without limit.
    The observed partial sum is re-checked against it.
    """
    floor = stream.growth_floor
    if floor is None:
        return None
    n = len(values)
    bound = floor(n)
    partial = sum(values, Fraction(0))
    if partial < bound:
        logger.warning("Growth floor of %s exceeds its partial sum at %d positions", stream.label, n)
        return None
    return DivergenceWitness(
        WitnessKind.UNBOUNDED,
        f"partial sums unbounded: the first {n} positions add at least {bound} "
        "and the floor grows without limit",
        {"positions": n, "floor": str(bound), "partial": str(partial)},
    )


def powers_diverge(
    instance: TopologicalMonoid[E], x: E, n_max: int, level: int, params: VerificationParams | None = None
) -> bool:
    """True when the sequence of powers of x has no limit in the instance.

    Implemented through detect_divergence on the constant stream x, x, x, ...
    observed up to n_max positions; `level` is recorded for reporting only,
    since a witness rules out every candidate at every level.
    """
    instance.check(x)
    if x == instance.identity:
        raise UnitElementError("powers of the identity are constant")
    params = (params or VerificationParams()).with_overrides(depth=n_max)
    stream = FactorStream.from_rule(
        instance, lambda _j: x, start=0, label=f"const({instance.format(x)})"
    )
    witness = detect_divergence(stream, params)
    logger.debug("powers of %s at level %d: %s", instance.format(x), level, witness)
    return witness is not None
