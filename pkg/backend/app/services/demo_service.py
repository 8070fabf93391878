"""Scripted counterexample demos."""

import logging

from app.models.report import SuiteReport
from app.monoid import VerificationParams, make_instance
from app.monoid.registry import InstanceRegistry
from app.statements.demos import DEMOS

from .check_logger import CheckLogger
from .laws_service import SuiteContext
from .suite_service import law_checks, run_suite

logger = logging.getLogger(__name__)


class UnknownDemoError(ValueError):
    """Raised for a demo name that is not registered."""


def list_demos() -> list[str]:
    return sorted(DEMOS)


async def run_demo(
    name: str, params: VerificationParams, check_logger: CheckLogger | None = None
) -> SuiteReport:
    """
    Run one counterexample demo; each check cites the statement it refutes
    or confirms, with the expectation inverted for documented counterexamples.

    Raises:
        UnknownDemoError: If the demo name is not registered
    """
    if name not in DEMOS:
        raise UnknownDemoError(f"Unknown demo: {name} (known: {', '.join(list_demos())})")
    kind, statements = DEMOS[name]
    instance_params = {"window": params.window} if "window" in InstanceRegistry.PARAMETERS[kind] else {}
    instance = make_instance(kind, **instance_params)
    ctx = SuiteContext(instance, params)
    logger.info("Running demo %s on %s", name, instance.name)
    results = await run_suite(law_checks(ctx, statements, prefix=name), check_logger=check_logger)
    return SuiteReport(
        command="demo",
        subject=name,
        instance=instance.describe(),
        params={"seed": params.seed, "window": params.window, "depth": params.depth, "level": params.level},
        checks=results,
    )
