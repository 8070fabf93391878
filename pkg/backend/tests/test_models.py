"""Tests for report schemas, stream specs and check records."""

import json
from datetime import datetime, timezone

import pytest

from app.config import REPORT_SCHEMA
from app.models import CheckRecord, CheckResult, ProductReport, StreamSpec, SuiteReport
from app.monoid import ElementParseError
from app.monoid.types import Outcome


def _result(check_id: str, verdict: Outcome, expected: Outcome = Outcome.PASS) -> CheckResult:
    return CheckResult(
        check_id=check_id, statement=check_id, ref="claim", verdict=verdict, expected=expected
    )


# ============================================================
# CheckResult / SuiteReport
# ============================================================

class TestCheckResult:
    def test_line_format(self):
        result = CheckResult(
            check_id="qplus.atomless",
            statement="atomless",
            ref="Q+ has no atoms",
            verdict=Outcome.PASS,
            parameters={"note": "a b", "atoms": []},
        )
        assert result.line() == 'CHECK qplus.atomless PASS ref="Q+ has no atoms" atoms=[] note="a b"'

    def test_line_marks_expected_failure_and_witness(self):
        result = CheckResult(
            check_id="restricted.z-order-ideal",
            statement="z-order-ideal",
            ref="claim",
            verdict=Outcome.FAIL,
            expected=Outcome.FAIL,
            witness="base=ones",
        )
        assert result.line() == (
            'CHECK restricted.z-order-ideal FAIL ref="claim" expected=FAIL witness="base=ones"'
        )

    def test_as_expected(self):
        assert _result("a", Outcome.PASS).as_expected
        assert _result("a", Outcome.INCONCLUSIVE).as_expected
        assert not _result("a", Outcome.FAIL).as_expected
        assert _result("a", Outcome.FAIL, Outcome.FAIL).as_expected
        assert not _result("a", Outcome.PASS, Outcome.FAIL).as_expected


class TestSuiteReport:
    def test_exit_code(self):
        report = SuiteReport(command="check-laws", subject="free", checks=[_result("a", Outcome.PASS)])
        assert report.exit_code == 0
        failing = report.model_copy(update={"checks": [_result("a", Outcome.FAIL)]})
        assert failing.exit_code == 1

    def test_text_summary(self):
        report = SuiteReport(
            command="check-laws",
            subject="free",
            checks=[_result("b", Outcome.INCONCLUSIVE), _result("a", Outcome.PASS)],
        ).sorted()
        text = report.to_text()
        lines = text.splitlines()
        assert lines[0] == "# check-laws free"
        assert lines[1].startswith("CHECK a PASS")
        assert lines[-1] == "# 1 PASS, 0 FAIL, 1 INCONCLUSIVE; exit 0"

    def test_json_includes_exit_code_and_schema(self):
        report = SuiteReport(command="demo", subject="x", checks=[_result("a", Outcome.FAIL)])
        data = json.loads(report.to_json())
        assert data["exit_code"] == 1
        assert data["schema_version"] == REPORT_SCHEMA
        assert data["checks"][0]["verdict"] == "FAIL"


class TestProductReport:
    def test_text(self):
        report = ProductReport(
            stream="geometric(1/2)",
            level=10,
            depth=32,
            candidate="1",
            status="ConvergedAt",
            summary="ConvergedAt(core={1..11}, k=10, D=32, path=monotone)",
            normal_form=["1/2", "1/4"],
        )
        lines = report.to_text().splitlines()
        assert lines[0] == "# eval-product geometric(1/2)"
        assert lines[1] == "limit: 1"
        assert lines[3] == "normal-form: {1/2, 1/4} (first positions only)"

    def test_missing_candidate(self):
        report = ProductReport(stream="s", level=1, depth=1, status="DivergedWith", summary="x")
        assert "limit: -" in report.to_text()


# ============================================================
# StreamSpec
# ============================================================

class TestStreamSpec:
    def test_rule_parts(self):
        spec = StreamSpec.parse('{"instance": "qplus", "rule": "geometric(1/2)"}')
        assert spec.rule_name == "geometric"
        assert spec.rule_args == ["1/2"]
        assert StreamSpec.parse('{"instance": "pointwise", "rule": "chi-all"}').rule_args == []

    def test_print_round_trips(self):
        spec = StreamSpec.parse(
            '{"instance": "free", "params": {"gens": 2}, "factors": ["x", "y"], "depth": 8}'
        )
        assert StreamSpec.parse(spec.print()) == spec

    def test_exactly_one_source(self):
        with pytest.raises(ElementParseError, match="exactly one of factors and rule"):
            StreamSpec.parse('{"instance": "qplus"}')
        with pytest.raises(ElementParseError, match="exactly one of factors and rule"):
            StreamSpec.parse('{"instance": "qplus", "rule": "geometric(1/2)", "factors": ["1"]}')

    def test_empty_factors(self):
        with pytest.raises(ElementParseError, match="factors must be non-empty"):
            StreamSpec.parse('{"instance": "qplus", "factors": []}')

    def test_malformed_rule(self):
        with pytest.raises(ElementParseError, match="malformed rule"):
            StreamSpec.parse('{"instance": "qplus", "rule": "geometric(1/2"}')

    def test_malformed_json_position(self):
        with pytest.raises(ElementParseError) as exc:
            StreamSpec.parse('{\n  "instance": ,\n}')
        assert exc.value.line == 2


# ============================================================
# CheckRecord
# ============================================================

class TestCheckRecord:
    def _record(self, **overrides) -> CheckRecord:
        values = dict(
            check_id="free.identity",
            run_id="run-1",
            timestamp=datetime(2024, 1, 1, tzinfo=timezone.utc),
            verdict="PASS",
        )
        values.update(overrides)
        return CheckRecord(**values)

    def test_to_dict(self):
        data = self._record(latency_ms=5).to_dict()
        assert data["timestamp"] == "2024-01-01T00:00:00+00:00"
        assert data["latency_ms"] == 5
        assert data["error_message"] is None

    def test_failed(self):
        assert not self._record().failed
        assert self._record(verdict="FAIL").failed
        assert not self._record(verdict="FAIL", expected="FAIL").failed
        assert self._record(verdict="PASS", expected="FAIL").failed
        assert self._record(verdict="INCONCLUSIVE", error_message="boom").failed
