"""Models package - exports report schemas, stream specs and check records."""

from app.models.check_log import CheckRecord
from app.models.report import CheckResult, ProductReport, SuiteReport
from app.models.stream_spec import StreamSpec

__all__ = [
    "CheckRecord",
    "CheckResult",
    "ProductReport",
    "SuiteReport",
    "StreamSpec",
]
