"""Decimation and dissociation checks."""

from __future__ import annotations

import logging
from typing import Callable, Iterable, TypeVar

from app.monoid.config import VerificationParams
from app.monoid.types import Outcome

from .divergence import detect_divergence
from .net import find_limit, verify_convergence
from .stream import FactorStream, StreamEntry, SubsetRule, disjoint_union
from .types import CheckOutcome, ConvergenceStatus

logger = logging.getLogger(__name__)

E = TypeVar("E")


def check_arbitrary_decimation(
    stream: FactorStream[E],
    rule: SubsetRule,
    pool: Iterable[E] = (),
    params: VerificationParams | None = None,
    parent_limit: E | None = None,
) -> CheckOutcome:
    """
    Evaluate the sub-product selected by `rule`.

    PASS when the sub-stream is certified convergent to some candidate (pool
    elements, ambient limit, or the instance's proposal) or the instance
    certifies coordinatewise convergence under the parent limit; FAIL with a
    divergence witness; INCONCLUSIVE otherwise.
    """
    params = params or VerificationParams()
    instance = stream.instance
    sub = stream.select(rule)

    if sub.covers_depth(params.depth):
        limit = instance.product(sub.value(e) for e in sub.take(params.depth))
        return CheckOutcome(
            Outcome.PASS,
            f"finite sub-product over {sub.length} factors",
            limit=limit,
            data={"rule": rule.spec()},
        )

    witness = detect_divergence(sub, params)
    if witness is not None:
        return CheckOutcome(
            Outcome.FAIL,
            f"sub-product {rule.spec()} diverges: {witness.detail}",
            witness=witness,
            data={"rule": rule.spec(), **witness.data},
        )

    report = find_limit(sub, params, pool)
    if report.converged:
        return CheckOutcome(
            Outcome.PASS,
            f"sub-product {rule.spec()} converges to {instance.format(report.candidate)}",
            report=report,
            limit=report.candidate,
            data={"rule": rule.spec()},
        )
    if report.diverged:
        return CheckOutcome(
            Outcome.FAIL,
            f"sub-product {rule.spec()} diverges: {report.witness.detail}",
            report=report,
            witness=report.witness,
            data={"rule": rule.spec()},
        )

    if parent_limit is not None and instance.coordinatewise_limit_exists(sub, parent_limit, params):
        return CheckOutcome(
            Outcome.PASS,
            f"sub-product {rule.spec()} converges coordinatewise under "
            f"{instance.format(parent_limit)}",
            data={"rule": rule.spec()},
        )

    logger.warning("Decimation %s of %s undecided", rule.spec(), stream.label)
    return CheckOutcome(
        Outcome.INCONCLUSIVE,
        f"no limit certified for sub-product {rule.spec()}",
        report=report,
        data={"rule": rule.spec()},
    )


def check_finite_decimation(
    stream: FactorStream[E],
    removed: Iterable[int],
    pool: Iterable[E] = (),
    params: VerificationParams | None = None,
) -> CheckOutcome:
    """Remove finitely many indices; the cofinite sub-product must converge."""
    rule = SubsetRule("cofinite", tuple(sorted(set(removed))))
    return check_arbitrary_decimation(stream, rule, pool, params)


def check_dissociation(
    outer: FactorStream[E],
    expansions: Callable[[StreamEntry[E]], FactorStream[E]],
    params: VerificationParams | None = None,
    outer_limit: E | None = None,
) -> CheckOutcome:
    """
    Replace each outer factor by its expansion and merge over the disjoint
    union of index sets; PASS if the merged product converges to the outer
    limit.

    The expansions of the first `window` outer factors must be certified to
    converge to their factor; otherwise the check is INCONCLUSIVE.
    """
    params = params or VerificationParams()
    instance = outer.instance

    extra = [outer_limit] if outer_limit is not None else []
    outer_report = find_limit(outer, params, extra)
    if not outer_report.converged:
        return CheckOutcome(
            Outcome.INCONCLUSIVE,
            "outer product not certified convergent",
            report=outer_report,
        )
    limit = outer_report.candidate

    checked = outer.take(min(params.depth, params.window))
    for entry in checked:
        factor = outer.value(entry)
        inner = expansions(entry)
        if not verify_convergence(inner, factor, params.level, params.depth, params).converged:
            return CheckOutcome(
                Outcome.INCONCLUSIVE,
                f"expansion of the factor at index {entry.index} is not certified to converge "
                f"to {instance.format(factor)}",
                data={"outer": outer.label, "index": entry.index},
            )

    merged = disjoint_union(outer, expansions)
    report = verify_convergence(merged, limit, params.level, params.depth, params)
    data = {"outer": outer.label, "limit": instance.format(limit), "expansions_checked": len(checked)}
    if report.converged:
        return CheckOutcome(
            Outcome.PASS,
            f"dissociated product converges to {instance.format(limit)}",
            report=report,
            limit=limit,
            data=data,
        )
    if report.status in (ConvergenceStatus.DIVERGED_WITH, ConvergenceStatus.REFUTED):
        detail = report.witness.detail if report.witness else report.note
        return CheckOutcome(
            Outcome.FAIL,
            f"dissociated product does not converge to the outer limit: {detail}",
            report=report,
            witness=report.witness,
            data=data,
        )
    return CheckOutcome(
        Outcome.INCONCLUSIVE, f"dissociated product undecided: {report.note}", report=report, data=data
    )
