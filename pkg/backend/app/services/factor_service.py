"""Factorisation discovery for a single element."""

import logging
from typing import Any

from app.factorisation import FactorisationMonoid, unique_factorisation_check
from app.models.report import SuiteReport
from app.monoid import VerificationParams, make_instance

from .suite_service import Check, to_result

logger = logging.getLogger(__name__)


def factor(
    kind: str,
    text: str,
    params: VerificationParams,
    instance_params: dict[str, Any] | None = None,
) -> SuiteReport:
    """
    Report every factorisation of the parsed element into window atoms,
    with the uniqueness verdict.

    Raises:
        ElementParseError: If the element text does not parse
    """
    instance = make_instance(kind, **(instance_params or {}))
    b = instance.parse(text)
    z = FactorisationMonoid(instance, params)
    outcome = unique_factorisation_check(b, instance, params, z)
    logger.info("Factorisations of %s: %s", instance.format(b), outcome.detail)
    check = Check(f"factor.{instance.kind}", "unique-factorisation", instance.kind, lambda: outcome)
    return SuiteReport(
        command="factor",
        subject=instance.format(b),
        instance=instance.describe(),
        params={"window": params.window, "degree": params.degree, "max_factors": params.max_factors},
        checks=[to_result(check, outcome)],
    )
