"""Concurrent execution of check suites."""

import asyncio
import logging
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction
from time import monotonic
from typing import Any, Callable
from uuid import uuid4

from app.config import settings
from app.models.check_log import CheckRecord
from app.models.report import CheckResult, SuiteReport
from app.monoid import Outcome, VerificationParams, make_instance
from app.monoid.errors import UnknownInstanceError
from app.monoid.registry import InstanceRegistry
from app.statements import StatementRegistry
from app.topology import CheckOutcome

from .check_logger import CheckLogger, DefaultCheckLogger
from .laws_service import SUITES, SuiteContext, get_law

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Check:
    """One scheduled check: the statement it verifies on an instance kind."""

    check_id: str
    statement: str
    kind: str
    run: Callable[[], CheckOutcome]


def law_checks(ctx: SuiteContext, names: tuple[str, ...], prefix: str | None = None) -> list[Check]:
    prefix = prefix or ctx.kind
    checks = []
    for name in names:
        law = get_law(name)
        checks.append(Check(f"{prefix}.{name}", name, ctx.kind, lambda law=law: law(ctx)))
    return checks


def to_result(check: Check, outcome: CheckOutcome) -> CheckResult:
    statement = StatementRegistry.get(check.statement)
    witness = outcome.witness.detail if outcome.witness is not None else ""
    return CheckResult(
        check_id=check.check_id,
        statement=check.statement,
        ref=statement.ref,
        verdict=outcome.outcome,
        expected=statement.expected(check.kind),
        detail=outcome.detail,
        witness=witness,
        parameters=_jsonable(outcome.data),
    )


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in value]
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, (Fraction, float)):
        return str(value)
    return repr(value)


async def run_suite(
    checks: list[Check],
    concurrency: int | None = None,
    check_logger: CheckLogger | None = None,
) -> list[CheckResult]:
    """
    Run checks concurrently (bounded by semaphore) in worker threads.

    A check that raises becomes an INCONCLUSIVE result carrying the error
    text; the remaining checks still run. Results come back in canonical
    check-id order.
    """
    check_logger = check_logger or DefaultCheckLogger()
    semaphore = asyncio.Semaphore(concurrency or settings.suite_concurrency)
    run_id = str(uuid4())

    async def _run_check(check: Check) -> CheckResult:
        async with semaphore:
            record = CheckRecord(
                check_id=check.check_id,
                run_id=run_id,
                timestamp=datetime.now(timezone.utc),
                verdict=Outcome.INCONCLUSIVE.value,
            )
            start = monotonic()
            try:
                outcome = await asyncio.to_thread(check.run)
                result = to_result(check, outcome)
                record.verdict = result.verdict.value
                record.expected = result.expected.value
                return result
            except Exception as e:
                record.error_message = str(e)
                raise
            finally:
                record.latency_ms = int((monotonic() - start) * 1000)
                await check_logger.log(record)

    outcomes = await asyncio.gather(*[_run_check(c) for c in checks], return_exceptions=True)

    results: list[CheckResult] = []
    for check, item in zip(checks, outcomes):
        if isinstance(item, Exception):
            logger.error("Check %s raised: %s", check.check_id, item)
            statement = StatementRegistry.get(check.statement)
            results.append(
                CheckResult(
                    check_id=check.check_id,
                    statement=check.statement,
                    ref=statement.ref,
                    verdict=Outcome.INCONCLUSIVE,
                    expected=statement.expected(check.kind),
                    detail=f"error: {type(item).__name__}: {item}",
                )
            )
            continue
        if not item.as_expected:
            logger.warning("Check %s: %s (expected %s)", item.check_id, item.verdict.value, item.expected.value)
        results.append(item)
    return sorted(results, key=lambda r: r.check_id)


def _params_dump(params: VerificationParams) -> dict[str, Any]:
    return {
        "window": params.window,
        "degree": params.degree,
        "depth": params.depth,
        "level": params.level,
        "seed": params.seed,
        "qmax": params.qmax,
        "max_factors": params.max_factors,
    }


async def check_laws(
    kind: str,
    params: VerificationParams,
    instance_params: dict[str, Any] | None = None,
    check_logger: CheckLogger | None = None,
) -> SuiteReport:
    """
    Run the law suite of one instance kind.

    Raises:
        UnknownInstanceError: For unknown kinds and for demo-only instances
        InvalidInstanceParams: For unsupported instance parameters
    """
    kind = InstanceRegistry.ALIASES.get(kind, kind)
    if kind in InstanceRegistry.DEMO_ONLY:
        raise UnknownInstanceError(f"{kind} violates the standing assumptions; use the demo command")
    instance = make_instance(kind, **(instance_params or {}))
    if kind not in SUITES:
        raise UnknownInstanceError(f"No law suite for {kind}")
    ctx = SuiteContext(instance, params)
    logger.info("Running %d checks on %s", len(SUITES[kind]), instance.name)
    results = await run_suite(law_checks(ctx, SUITES[kind]), check_logger=check_logger)
    return SuiteReport(
        command="check-laws",
        subject=kind,
        instance=instance.describe(),
        params=_params_dump(params),
        checks=results,
    )
