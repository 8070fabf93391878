"""Check and suite report schemas."""

import json
from typing import Any

from pydantic import BaseModel, computed_field

from app.config import REPORT_SCHEMA
from app.monoid.types import Outcome


class CheckResult(BaseModel):
    """Verdict of one check against its statement."""
    check_id: str
    statement: str
    ref: str
    verdict: Outcome
    expected: Outcome = Outcome.PASS
    detail: str = ""
    witness: str = ""
    parameters: dict[str, Any] = {}

    @property
    def as_expected(self) -> bool:
        """False for a FAIL where PASS was expected, or a PASS where FAIL was."""
        if self.expected is Outcome.PASS:
            return self.verdict is not Outcome.FAIL
        return self.verdict is not Outcome.PASS

    def line(self) -> str:
        """`CHECK <id> <verdict> ref="..." key=val ...`"""
        parts = [f"CHECK {self.check_id} {self.verdict.value}", f'ref="{self.ref}"']
        if self.expected is Outcome.FAIL:
            parts.append("expected=FAIL")
        for key in sorted(self.parameters):
            parts.append(f"{key}={_compact(self.parameters[key])}")
        if self.witness:
            parts.append(f'witness="{self.witness}"')
        return " ".join(parts)


class SuiteReport(BaseModel):
    """Ordered check results of one CLI command."""
    schema_version: str = REPORT_SCHEMA
    command: str
    subject: str
    instance: dict[str, Any] = {}
    params: dict[str, Any] = {}
    checks: list[CheckResult] = []

    @computed_field
    @property
    def exit_code(self) -> int:
        return 0 if all(c.as_expected for c in self.checks) else 1

    def sorted(self) -> "SuiteReport":
        """Copy with checks in canonical check-id order."""
        return self.model_copy(update={"checks": sorted(self.checks, key=lambda c: c.check_id)})

    def to_text(self) -> str:
        lines = [f"# {self.command} {self.subject}"]
        lines.extend(c.line() for c in self.checks)
        counts = {o: sum(1 for c in self.checks if c.verdict is o) for o in Outcome}
        lines.append(
            f"# {counts[Outcome.PASS]} PASS, {counts[Outcome.FAIL]} FAIL, "
            f"{counts[Outcome.INCONCLUSIVE]} INCONCLUSIVE; exit {self.exit_code}"
        )
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"


def _compact(value: Any) -> str:
    if isinstance(value, str):
        return value if value and " " not in value else json.dumps(value)
    return json.dumps(value, sort_keys=True, separators=(",", ":"), default=str)


class ProductReport(BaseModel):
    """Convergence verdict and normal form of one countable product."""
    schema_version: str = REPORT_SCHEMA
    instance: dict[str, Any] = {}
    stream: str
    level: int
    depth: int
    candidate: str | None = None
    status: str
    summary: str
    normal_form: list[str] = []
    normal_form_complete: bool = False

    def to_text(self) -> str:
        form = "{" + ", ".join(self.normal_form) + "}"
        if not self.normal_form_complete:
            form += " (first positions only)"
        lines = [
            f"# eval-product {self.stream}",
            f"limit: {self.candidate if self.candidate is not None else '-'}",
            f"report: {self.summary}",
            f"normal-form: {form}",
        ]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(self.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"
