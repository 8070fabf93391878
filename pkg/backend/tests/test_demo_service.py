"""Tests for counterexample demos and element factorisation."""

from unittest.mock import AsyncMock

import pytest

from app.monoid import ElementParseError
from app.monoid.types import Outcome
from app.services.demo_service import UnknownDemoError, list_demos, run_demo
from app.services.factor_service import factor
from app.statements.demos import DEMOS


class TestRunDemo:
    def test_list_demos_sorted(self):
        assert list_demos() == sorted(DEMOS)
        assert "restricted-order-ideal" in list_demos()

    @pytest.mark.asyncio
    @pytest.mark.parametrize(
        "name", ["restricted-order-ideal", "integers-dissociation", "harmonic-closure"]
    )
    async def test_demo_runs_as_expected(self, name, params):
        report = await run_demo(name, params, check_logger=AsyncMock())
        assert report.exit_code == 0
        assert report.command == "demo"
        assert all(c.check_id.startswith(f"{name}.") for c in report.checks)

    @pytest.mark.asyncio
    async def test_order_ideal_counterexample(self, params):
        report = await run_demo("restricted-order-ideal", params, check_logger=AsyncMock())
        (order_ideal,) = [c for c in report.checks if c.statement == "z-order-ideal"]
        assert order_ideal.verdict is Outcome.FAIL
        assert order_ideal.expected is Outcome.FAIL

    @pytest.mark.asyncio
    async def test_qplus_decimation(self, params):
        small = params.with_overrides(depth=16, qmax=1000)
        report = await run_demo("qplus-decimation", small, check_logger=AsyncMock())
        assert report.exit_code == 0

    @pytest.mark.asyncio
    async def test_unknown_demo(self, params):
        with pytest.raises(UnknownDemoError, match="Unknown demo: nope"):
            await run_demo("nope", params)


class TestFactor:
    def test_free_element_unique(self, params):
        report = factor("free", "x^2*y", params)
        assert report.subject == "x^2*y"
        (result,) = report.checks
        assert result.verdict is Outcome.PASS
        assert result.parameters["factorisations"] == ["{x:2, y:1}"]
        assert report.exit_code == 0

    def test_all_ones_has_two_factorisations(self, params):
        report = factor("restricted", "base=1", params, {"window": 6})
        (result,) = report.checks
        assert result.verdict is Outcome.FAIL
        assert result.expected is Outcome.FAIL
        assert report.exit_code == 0

    def test_parse_error_propagates(self, params):
        with pytest.raises(ElementParseError):
            factor("free", "x*q", params)
