"""Net convergence over finite index subsets.

A stream converges to a candidate at level k within depth D when there is a
core S0 among the first D indices such that every finite T with
S0 <= T <= first D indices has its partial product in U_k(candidate).
"""

from __future__ import annotations

import logging
import random
from itertools import combinations
from typing import Iterable, TypeVar

from app.monoid.base import TopologicalMonoid
from app.monoid.config import VerificationParams
from app.utils.rationals import dyadic_level

from .stream import FactorStream, StreamEntry
from .types import (
    Certificate,
    ConvergenceReport,
    ConvergenceStatus,
    DivergenceWitness,
    ExtensionPath,
    WitnessKind,
)

logger = logging.getLogger(__name__)

E = TypeVar("E")


def neighborhood_contains(instance: TopologicalMonoid[E], center: E, level: int, x: E) -> bool:
    """Decide x in U_level(center)."""
    if level < 0:
        raise ValueError("level must be non-negative")
    instance.check(center, x)
    return instance.neighborhood_contains(center, level, x)


def separating_level(
    instance: TopologicalMonoid[E], x: E, y: E, max_level: int = 64
) -> int | None:
    """Least level k <= max_level with y outside U_k(x), or None."""
    instance.check(x, y)
    for k in range(max_level + 1):
        if not instance.neighborhood_contains(x, k, y):
            return k
    return None


def eval_partial(stream: FactorStream[E], indices: Iterable[int]) -> E:
    """Product of factor(j) ** multiplicity(j) over the finite index set F."""
    wanted = set(indices)
    instance = stream.instance
    if not wanted:
        return instance.identity
    top = max(wanted)
    result = instance.identity
    found = 0
    depth = 1
    while True:
        entries = stream.take(depth)
        if len(entries) < depth or entries[-1].index >= top:
            break
        depth *= 2
    for entry in entries:
        if entry.index in wanted:
            result = instance.combine(result, stream.value(entry))
            found += 1
    if found != len(wanted):
        missing = sorted(wanted - {e.index for e in entries})
        raise ValueError(f"indices not in stream {stream.label}: {missing[:5]}")
    return result


def prefix_products(stream: FactorStream[E], depth: int) -> list[E]:
    """P_0 .. P_n over the first n <= depth positions."""
    instance = stream.instance
    products = [instance.identity]
    for entry in stream.take(depth):
        products.append(instance.combine(products[-1], stream.value(entry)))
    return products


def verify_convergence(
    stream: FactorStream[E],
    candidate: E,
    level: int,
    depth: int,
    params: VerificationParams | None = None,
) -> ConvergenceReport:
    """
    Bounded certificate that the stream's net converges to candidate.

    Args:
        stream: The factor stream
        candidate: Proposed limit
        level: Neighbourhood level k
        depth: Number of leading positions D taken into account
        params: Sampling and divergence parameters (defaults if omitted)

    Returns:
        ConvergedAt with a core certificate, DivergedWith when no limit
        exists, Refuted when this candidate is ruled out, or Inconclusive.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    params = (params or VerificationParams()).with_overrides(depth=depth)
    instance = stream.instance
    instance.check(candidate)

    from .divergence import detect_divergence

    witness = detect_divergence(stream, params)
    if witness is not None:
        logger.debug("Stream %s diverges: %s", stream.label, witness.detail)
        return ConvergenceReport(
            ConvergenceStatus.DIVERGED_WITH, witness=witness, candidate=candidate
        )

    if not instance.contains(candidate):
        return ConvergenceReport(
            ConvergenceStatus.REFUTED,
            note="candidate is not in the carrier",
            candidate=candidate,
        )

    entries = stream.take(depth)
    products = prefix_products(stream, depth)

    refutation = _dominance_refutation(stream, entries, products, candidate)
    if refutation is not None:
        return ConvergenceReport(
            ConvergenceStatus.REFUTED, witness=refutation, candidate=candidate
        )

    whole = stream.covers_depth(depth)
    n = len(entries)
    if whole and not instance.neighborhood_contains(candidate, level, products[-1]):
        return ConvergenceReport(
            ConvergenceStatus.REFUTED,
            note=f"finite product {instance.format(products[-1])} is outside U_{level}",
            candidate=candidate,
        )
    last_core = n if whole else n - 1
    # P_D must lie in the ball whatever the core is.
    if not instance.neighborhood_contains(candidate, level, products[-1]):
        return ConvergenceReport(
            ConvergenceStatus.INCONCLUSIVE,
            note=f"partial product over the first {n} positions is outside U_{level}",
            candidate=candidate,
        )

    for s in range(last_core + 1):
        if not instance.neighborhood_contains(candidate, level, products[s]):
            continue
        path, samples = _extensions_stay(
            stream, entries, products[s], s, candidate, level, params
        )
        if path is None:
            continue
        certificate = Certificate(
            core=tuple(e.index for e in entries[:s]),
            level=level,
            depth=depth,
            path=path,
            samples=samples,
        )
        logger.debug(
            "Stream %s converges at level %d with core size %d (%s)",
            stream.label, level, s, path.value,
        )
        return ConvergenceReport(
            ConvergenceStatus.CONVERGED_AT, certificate=certificate, candidate=candidate
        )

    return ConvergenceReport(
        ConvergenceStatus.INCONCLUSIVE,
        note=f"no core within depth {depth} at level {level}",
        candidate=candidate,
    )


def _dominance_refutation(
    stream: FactorStream[E],
    entries: tuple[StreamEntry[E], ...],
    products: list[E],
    candidate: E,
) -> DivergenceWitness | None:
    """A prefix lying strictly above the candidate rules it out: every later
    partial product stays at least as far away."""
    instance = stream.instance
    if not instance.escapes_above(candidate, products[-1]):
        return None
    first = next(
        i for i in range(1, len(products)) if instance.escapes_above(candidate, products[i])
    )
    data: dict[str, object] = {
        "prefix": len(entries[:first]),
        "value": instance.format(products[first]),
    }
    gap = _order_gap(instance, candidate, products[first])
    if gap is not None:
        data["level"] = gap
    return DivergenceWitness(
        WitnessKind.DOMINANCE,
        f"partial product over the first {first} positions lies above the candidate",
        data,
    )


def _order_gap(instance: TopologicalMonoid[E], candidate: E, value: E) -> int | None:
    """Level at which a dominating value stays outside the candidate's ball."""
    hi, lo = instance.order_value(value), instance.order_value(candidate)
    if hi is None or lo is None or hi <= lo:
        return None
    return dyadic_level(hi - lo)


def _extensions_stay(
    stream: FactorStream[E],
    entries: tuple[StreamEntry[E], ...],
    core_product: E,
    s: int,
    candidate: E,
    level: int,
    params: VerificationParams,
) -> tuple[ExtensionPath | None, int]:
    """Check every T between the first s positions and the first len(entries)."""
    instance = stream.instance
    rest = [stream.value(e) for e in entries[s:]]

    def inside(chosen: Iterable[E]) -> bool:
        value = core_product
        for v in chosen:
            value = instance.combine(value, v)
        return instance.neighborhood_contains(candidate, level, value)

    if instance.monotone:
        # Basic neighbourhoods are order-convex, so the two ends suffice.
        return ExtensionPath.MONOTONE, 0

    if len(rest) <= params.exhaustive_extension_limit:
        for size in range(1, len(rest) + 1):
            for chosen in combinations(rest, size):
                if not inside(chosen):
                    return None, 0
        return ExtensionPath.EXHAUSTIVE, 2 ** len(rest)

    rng = random.Random(f"{params.seed}:{stream.label}:{level}:{s}")
    for v in rest:
        if not inside([v]):
            return None, 0
    for _ in range(params.superset_samples):
        chosen = [v for v in rest if rng.random() < 0.5]
        if not inside(chosen):
            return None, 0
    return ExtensionPath.SAMPLED, params.superset_samples + len(rest)


def candidate_pool(
    stream: FactorStream[E], params: VerificationParams, extra: Iterable[E] = ()
) -> list[E]:
    """Deduplicated limit candidates: given ones, the ambient limit when it is
    in the carrier, and the instance's own proposal."""
    instance = stream.instance
    pool: list[E] = []
    for c in extra:
        if c not in pool:
            pool.append(c)
    ambient = stream.ambient_limit
    if ambient is not None and instance.contains(ambient) and ambient not in pool:
        pool.append(ambient)
    if stream.covers_depth(params.depth):
        full = instance.product(stream.value(e) for e in stream.take(params.depth))
        if full not in pool:
            pool.append(full)
    proposed = instance.propose_limit(stream, params)
    if proposed is not None and proposed not in pool:
        pool.append(proposed)
    return pool


def find_limit(
    stream: FactorStream[E],
    params: VerificationParams,
    extra: Iterable[E] = (),
) -> ConvergenceReport:
    """Try every pool candidate; the first ConvergedAt wins.

    DivergedWith is returned as soon as it is found; otherwise the last
    non-converged report is returned.
    """
    pool = candidate_pool(stream, params, extra)
    report: ConvergenceReport | None = None
    for candidate in pool:
        report = verify_convergence(stream, candidate, params.level, params.depth, params)
        if report.converged or report.diverged:
            return report
    if report is None:
        from .divergence import detect_divergence

        witness = detect_divergence(stream, params)
        if witness is not None:
            return ConvergenceReport(ConvergenceStatus.DIVERGED_WITH, witness=witness)
        return ConvergenceReport(ConvergenceStatus.INCONCLUSIVE, note="no limit candidate")
    return report
