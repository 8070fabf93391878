"""
Statement Registry.

Every executable check verifies a named statement. The registry holds the
statement text cited in reports and the instance kinds on which the
statement is a documented counterexample (the check is expected to FAIL
there).

Usage:
    from app.statements import StatementRegistry
    statement = StatementRegistry.get("z-order-ideal")
    statement.expected("restricted")   # Outcome.FAIL
"""

import logging
from dataclasses import dataclass, field

from app.monoid.types import Outcome

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Statement:
    """A checked claim and the instances that refute it."""

    name: str
    ref: str
    counterexamples: frozenset[str] = field(default_factory=frozenset)

    def expected(self, kind: str) -> Outcome:
        return Outcome.FAIL if kind in self.counterexamples else Outcome.PASS


class StatementRegistry:
    """Named statement registry."""

    _statements: dict[str, Statement] = {}

    @classmethod
    def register(cls, name: str, ref: str, counterexamples: tuple[str, ...] = ()):
        if name in cls._statements:
            logger.warning("Overwriting existing statement: %s", name)
        cls._statements[name] = Statement(name, ref, frozenset(counterexamples))

    @classmethod
    def get(cls, name: str) -> Statement:
        statement = cls._statements.get(name)
        if statement is None:
            raise ValueError(f"Unknown statement: {name}")
        return statement

    @classmethod
    def list(cls) -> list[str]:
        return list(cls._statements.keys())

    @classmethod
    def _reset_for_testing(cls, statements: dict[str, Statement]):
        cls._statements = statements


# --- Auto-registration imports ---
# Each module registers its statements at import time.
from . import laws  # noqa: E402, F401
from . import factorisation  # noqa: E402, F401
from . import demos  # noqa: E402, F401

__all__ = ["Statement", "StatementRegistry"]
