"""Structured logging of executed checks."""

import json
import logging
from typing import Protocol

from app.models.check_log import CheckRecord

logger = logging.getLogger("app.services.checks")


class CheckLogger(Protocol):
    """Protocol for check record loggers."""

    async def log(self, record: CheckRecord) -> None:
        """Log a check record."""
        ...


class DefaultCheckLogger:
    """Emit check records as structured JSON to Python logger.

    Records matching their expectation are logged at INFO level.
    Unexpected verdicts and errors are logged at WARNING level.
    """

    async def log(self, record: CheckRecord) -> None:
        json_str = json.dumps(record.to_dict())
        if record.failed:
            logger.warning(json_str)
        else:
            logger.info(json_str)
