"""Result types for net convergence checks."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from app.monoid.types import Outcome


class ConvergenceStatus(str, Enum):
    CONVERGED_AT = "ConvergedAt"
    DIVERGED_WITH = "DivergedWith"
    REFUTED = "Refuted"
    INCONCLUSIVE = "Inconclusive"


class ExtensionPath(str, Enum):
    """How 'every finite T between the core and the depth' was verified."""

    MONOTONE = "monotone"
    EXHAUSTIVE = "exhaustive"
    SAMPLED = "sampled"


class WitnessKind(str, Enum):
    UNBOUNDED = "unbounded"
    VALUATION_ESCAPE = "valuation-escape"
    DENOMINATOR_EXCLUSION = "denominator-exclusion"
    OUTSIDE_CARRIER = "outside-carrier"
    DOMINANCE = "dominance"


@dataclass(frozen=True)
class Certificate:
    """Core S0 (stream indices), level k and depth D of a ConvergedAt report."""

    core: tuple[int, ...]
    level: int
    depth: int
    path: ExtensionPath
    samples: int = 0


@dataclass(frozen=True)
class DivergenceWitness:
    """A re-checkable reason why no element of the instance (or no given
    candidate, for DOMINANCE) is the limit of a stream."""

    kind: WitnessKind
    detail: str
    data: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class ConvergenceReport:
    status: ConvergenceStatus
    certificate: Certificate | None = None
    witness: DivergenceWitness | None = None
    note: str = ""
    candidate: Any = None

    @property
    def converged(self) -> bool:
        return self.status is ConvergenceStatus.CONVERGED_AT

    @property
    def diverged(self) -> bool:
        return self.status is ConvergenceStatus.DIVERGED_WITH

    def summary(self) -> str:
        """One-line text form used by the CLI."""
        if self.certificate is not None:
            cert = self.certificate
            core = _compress(cert.core)
            return (
                f"{self.status.value}(core={core}, k={cert.level}, D={cert.depth}, "
                f"path={cert.path.value})"
            )
        if self.witness is not None:
            return f"{self.status.value}({self.witness.kind.value}: {self.witness.detail})"
        return f"{self.status.value}({self.note})"


def _compress(indices: tuple[int, ...]) -> str:
    """Render a sorted index tuple, collapsing runs into a..b."""
    if not indices:
        return "{}"
    parts: list[str] = []
    start = prev = indices[0]
    for i in indices[1:]:
        if i == prev + 1:
            prev = i
            continue
        parts.append(f"{start}..{prev}" if prev > start else str(start))
        start = prev = i
    parts.append(f"{start}..{prev}" if prev > start else str(start))
    return "{" + ",".join(parts) + "}"


@dataclass(frozen=True)
class CheckOutcome:
    """Result of an executable check (decimation, dissociation, Z(H) checks)."""

    outcome: Outcome
    detail: str
    report: ConvergenceReport | None = None
    witness: DivergenceWitness | None = None
    limit: Any = None
    data: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.outcome is Outcome.PASS
