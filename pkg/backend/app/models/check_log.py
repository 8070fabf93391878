"""Check execution records for observability."""

from dataclasses import dataclass
from datetime import datetime
from typing import Any, Optional


@dataclass
class CheckRecord:
    """In-memory record of one executed check.

    Used by the suite runner to capture timing and outcome before emitting
    it as a structured JSON log line. Timing never enters reports.
    """

    check_id: str
    run_id: str
    timestamp: datetime
    verdict: str
    expected: str = "PASS"
    latency_ms: int = 0
    error_message: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.error_message is not None or (
            self.verdict == "FAIL" and self.expected == "PASS"
        ) or (self.verdict == "PASS" and self.expected == "FAIL")

    def to_dict(self) -> dict[str, Any]:
        """Serialize to JSON-compatible dictionary."""
        return {
            "check_id": self.check_id,
            "run_id": self.run_id,
            "timestamp": self.timestamp.isoformat(),
            "verdict": self.verdict,
            "expected": self.expected,
            "latency_ms": self.latency_ms,
            "error_message": self.error_message,
        }
