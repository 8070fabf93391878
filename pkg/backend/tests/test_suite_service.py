"""Tests for concurrent suite execution and structured check logging."""

import json
import logging
from datetime import datetime, timezone
from unittest.mock import AsyncMock

import pytest

from app.models.check_log import CheckRecord
from app.monoid import UnknownInstanceError
from app.monoid.types import Outcome
from app.services.check_logger import DefaultCheckLogger
from app.services.laws_service import SUITES, SuiteContext, get_law
from app.services.suite_service import Check, check_laws, law_checks, run_suite, to_result
from app.statements import StatementRegistry
from app.topology import CheckOutcome


# ============================================================
# Helpers
# ============================================================

def _check(check_id: str, statement: str, kind: str, outcome: Outcome) -> Check:
    return Check(check_id, statement, kind, lambda: CheckOutcome(outcome, f"{statement} {outcome.value}"))


def _raising(check_id: str) -> Check:
    def boom() -> CheckOutcome:
        raise RuntimeError("boom")

    return Check(check_id, "identity", "free", boom)


# ============================================================
# run_suite
# ============================================================

class TestRunSuite:
    @pytest.mark.asyncio
    async def test_results_sorted_and_logged(self):
        logger = AsyncMock()
        checks = [
            _check("free.reduced", "reduced", "free", Outcome.PASS),
            _check("free.identity", "identity", "free", Outcome.PASS),
        ]

        results = await run_suite(checks, concurrency=2, check_logger=logger)

        assert [r.check_id for r in results] == ["free.identity", "free.reduced"]
        assert logger.log.call_count == 2
        record: CheckRecord = logger.log.call_args[0][0]
        assert record.verdict == "PASS"
        assert record.latency_ms >= 0
        assert record.error_message is None

    @pytest.mark.asyncio
    async def test_records_share_run_id(self):
        logger = AsyncMock()
        checks = [
            _check("free.identity", "identity", "free", Outcome.PASS),
            _check("free.reduced", "reduced", "free", Outcome.PASS),
        ]
        await run_suite(checks, check_logger=logger)
        run_ids = {call[0][0].run_id for call in logger.log.call_args_list}
        assert len(run_ids) == 1

    @pytest.mark.asyncio
    async def test_exception_becomes_inconclusive(self):
        logger = AsyncMock()
        checks = [_raising("free.identity"), _check("free.reduced", "reduced", "free", Outcome.PASS)]

        results = await run_suite(checks, check_logger=logger)

        assert results[0].verdict is Outcome.INCONCLUSIVE
        assert results[0].detail == "error: RuntimeError: boom"
        assert results[1].verdict is Outcome.PASS
        errors = [c[0][0].error_message for c in logger.log.call_args_list]
        assert "boom" in errors

    @pytest.mark.asyncio
    async def test_unexpected_verdict_logs_warning(self, caplog):
        checks = [_check("free.hausdorff", "hausdorff", "free", Outcome.FAIL)]
        with caplog.at_level(logging.WARNING, logger="app.services.suite_service"):
            results = await run_suite(checks, check_logger=AsyncMock())
        assert not results[0].as_expected
        assert "Check free.hausdorff: FAIL (expected PASS)" in caplog.text

    @pytest.mark.asyncio
    async def test_documented_counterexample_is_expected(self):
        checks = [_check("harmonic.hausdorff", "hausdorff", "harmonic", Outcome.FAIL)]
        results = await run_suite(checks, check_logger=AsyncMock())
        assert results[0].expected is Outcome.FAIL
        assert results[0].as_expected


class TestToResult:
    def test_result_cites_statement(self, qplus, params):
        ctx = SuiteContext(qplus, params)
        (check,) = law_checks(ctx, ("atomless",))
        assert check.check_id == "qplus.atomless"
        result = to_result(check, check.run())
        assert result.verdict is Outcome.PASS
        assert result.ref == "Q+ has no atoms"

    def test_unknown_law(self):
        with pytest.raises(ValueError):
            get_law("no-such-law")


class TestIrreducibilityLaws:
    def test_qplus_splits_are_not_prime(self, qplus, params):
        outcome = get_law("prime-irreducible")(SuiteContext(qplus, params))
        assert outcome.outcome is Outcome.PASS
        assert outcome.data == {"samples": 4, "splits": 4}

    def test_qplus_has_no_irreducibles_to_compare(self, qplus, params):
        outcome = get_law("topological-irreducibility")(SuiteContext(qplus, params))
        assert outcome.outcome is Outcome.PASS
        assert outcome.data["irreducible"] == 0

    def test_pointwise_agreement(self, pointwise, params):
        outcome = get_law("topological-irreducibility")(SuiteContext(pointwise, params))
        assert outcome.outcome is Outcome.PASS

    def test_restricted_all_ones_is_the_exception(self, restricted, params):
        outcome = get_law("topological-irreducibility")(SuiteContext(restricted, params))
        assert outcome.outcome is Outcome.FAIL
        assert outcome.data["stream"] == "atoms(base=ones)"
        assert StatementRegistry.get("topological-irreducibility").expected("restricted") is Outcome.FAIL

    def test_laws_in_suites(self):
        for kind in ("free", "qplus", "pointwise", "restricted"):
            assert "topological-irreducibility" in SUITES[kind]
        assert all("prime-irreducible" in suite for suite in SUITES.values())


# ============================================================
# check_laws
# ============================================================

class TestCheckLaws:
    @pytest.mark.asyncio
    async def test_free_suite_holds(self, params):
        report = await check_laws("free", params, check_logger=AsyncMock())
        assert report.exit_code == 0
        assert len(report.checks) == len(SUITES["free"])
        assert report.subject == "free"
        assert report.params["window"] == params.window

    @pytest.mark.asyncio
    async def test_demo_only_instance_refused(self, params):
        with pytest.raises(UnknownInstanceError, match="use the demo command"):
            await check_laws("integers", params)


# ============================================================
# DefaultCheckLogger
# ============================================================

class TestDefaultCheckLogger:
    def _record(self, **overrides) -> CheckRecord:
        values = dict(
            check_id="free.identity",
            run_id="run-1",
            timestamp=datetime(2024, 1, 1, tzinfo=timezone.utc),
            verdict="PASS",
        )
        values.update(overrides)
        return CheckRecord(**values)

    @pytest.mark.asyncio
    async def test_expected_verdict_logged_at_info(self, caplog):
        with caplog.at_level(logging.INFO, logger="app.services.checks"):
            await DefaultCheckLogger().log(self._record())
        (entry,) = caplog.records
        assert entry.levelno == logging.INFO
        assert json.loads(entry.getMessage())["check_id"] == "free.identity"

    @pytest.mark.asyncio
    async def test_unexpected_verdict_logged_at_warning(self, caplog):
        with caplog.at_level(logging.INFO, logger="app.services.checks"):
            await DefaultCheckLogger().log(self._record(verdict="FAIL"))
        (entry,) = caplog.records
        assert entry.levelno == logging.WARNING
