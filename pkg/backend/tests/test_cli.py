"""Tests for the command-line entry point."""

import json

import pytest

from app.main import EXIT_OK, EXIT_USAGE, build_parser, main

SMALL = ["--window", "6", "--degree", "3", "--depth", "24", "--level", "8", "--qmax", "10000"]


class TestDemoCommand:
    def test_demo_exits_zero(self, capsys):
        assert main(["demo", "integers-dissociation", *SMALL]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith("# demo integers-dissociation")
        assert "CHECK integers-dissociation.dissociation FAIL" in out

    def test_unknown_demo_is_usage_error(self, capsys):
        assert main(["demo", "nope"]) == EXIT_USAGE
        assert "topmon: error: Unknown demo: nope" in capsys.readouterr().err


class TestCheckLawsCommand:
    def test_demo_only_instance_refused(self, capsys):
        assert main(["check-laws", "integers-demo"]) == EXIT_USAGE
        assert "use the demo command" in capsys.readouterr().err

    def test_structured_report_is_reproducible(self, capsys):
        argv = ["check-laws", "free", "--format", "structured", *SMALL]
        first_code = main(argv)
        first = capsys.readouterr().out
        second_code = main(argv)
        second = capsys.readouterr().out
        assert first_code == second_code == EXIT_OK
        assert first == second
        assert json.loads(first)["subject"] == "free"

    def test_unknown_instance(self, capsys):
        assert main(["check-laws", "octonions"]) == EXIT_USAGE
        assert "Unknown instance kind: octonions" in capsys.readouterr().err


class TestFactorCommand:
    def test_free_element(self, capsys):
        assert main(["factor", "free", "x^2*y", *SMALL]) == EXIT_OK
        assert "CHECK factor.free PASS" in capsys.readouterr().out

    def test_expected_failure_still_exits_zero(self, capsys):
        assert main(["factor", "restricted", "base=1", *SMALL]) == EXIT_OK
        assert "expected=FAIL" in capsys.readouterr().out

    def test_parse_error_is_usage_error(self, capsys):
        assert main(["factor", "free", "x*q"]) == EXIT_USAGE
        assert "column 3" in capsys.readouterr().err


class TestEvalProductCommand:
    def test_text_report(self, tmp_path, capsys):
        spec = tmp_path / "geo.json"
        spec.write_text('{"instance": "qplus", "rule": "geometric(1/2)"}', encoding="utf-8")
        assert main(["eval-product", str(spec), *SMALL]) == EXIT_OK
        out = capsys.readouterr().out
        assert "# eval-product geometric(1/2)" in out
        assert "limit: 1" in out

    def test_structured_output_and_file(self, tmp_path, capsys):
        spec = tmp_path / "finite.json"
        spec.write_text('{"instance": "free", "factors": ["x", "y"]}', encoding="utf-8")
        target = tmp_path / "report.json"
        assert main(["eval-product", str(spec), "--format", "structured", "--output", str(target)]) == EXIT_OK
        printed = json.loads(capsys.readouterr().out)
        assert printed["candidate"] == "x*y"
        assert json.loads(target.read_text(encoding="utf-8")) == printed

    def test_malformed_spec(self, tmp_path, capsys):
        spec = tmp_path / "bad.json"
        spec.write_text('{"instance": "qplus",\n "rule": }', encoding="utf-8")
        assert main(["eval-product", str(spec)]) == EXIT_USAGE
        assert "line 2" in capsys.readouterr().err

    def test_missing_file(self, tmp_path, capsys):
        assert main(["eval-product", str(tmp_path / "missing.json")]) == EXIT_USAGE
        assert capsys.readouterr().err.startswith("topmon: error:")


class TestParser:
    def test_unknown_command_exits_two(self):
        with pytest.raises(SystemExit) as exc:
            main(["bogus"])
        assert exc.value.code == 2

    def test_common_flags(self):
        args = build_parser().parse_args(["check-laws", "series", "--vars", "1", "--precision", "4"])
        assert args.instance == "series"
        assert args.vars == 1
        assert args.format == "text"
