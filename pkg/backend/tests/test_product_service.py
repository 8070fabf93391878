"""Tests for stream rules and eval-product."""

from fractions import Fraction

import pytest

from app.models import StreamSpec
from app.monoid import ElementParseError, VerificationParams
from app.services.product_service import (
    RULES,
    build_stream,
    eval_product,
    harmonic_floor,
    nested_expansion,
    stream_from_spec,
)
from app.topology import StreamEntry


class TestBuildStream:
    def test_known_rules(self):
        assert set(RULES) == {"geometric", "chi-all", "chi-from", "harmonic-from", "const", "powers", "pairs"}

    def test_ratio_out_of_range(self, qplus):
        with pytest.raises(ElementParseError, match="strictly between 0 and 1"):
            build_stream(qplus, "geometric(2)")

    def test_rule_on_wrong_instance(self, qplus):
        with pytest.raises(ElementParseError, match="rule chi-all is not available"):
            build_stream(qplus, "chi-all")

    def test_chi_from_on_wrong_instance(self, qplus):
        with pytest.raises(ElementParseError, match="rule chi-from is not available"):
            build_stream(qplus, "chi-from(1)")

    def test_unknown_rule(self, qplus):
        with pytest.raises(ElementParseError, match="unknown rule 'spiral'"):
            build_stream(qplus, "spiral")

    def test_powers(self, free):
        stream = build_stream(free, "powers(x)")
        assert [free.format(e.factor) for e in stream.take(3)] == ["x", "x^2", "x^3"]

    def test_pairs(self, integers):
        assert [e.factor for e in build_stream(integers, "pairs").take(4)] == [1, -1, 2, -2]

    def test_subset_applied(self, qplus):
        spec = StreamSpec(instance="qplus", rule="geometric(1/2)", subset="evens")
        stream = stream_from_spec(spec, qplus)
        assert stream.label == "geometric(1/2)|evens"


class TestGrowthFloor:
    def test_harmonic_floor(self):
        assert harmonic_floor(1)(24) == 2
        assert harmonic_floor(1)(0) == 0
        assert harmonic_floor(4)(4) == Fraction(1, 2)

    def test_harmonic_floor_skips_e0(self):
        floor = harmonic_floor(0)
        assert floor(1) == 0
        assert floor(3) == Fraction(1, 2)

    def test_floor_attached_to_divergent_rules(self, harmonic, qplus, free):
        assert build_stream(harmonic, "harmonic-from(1)").growth_floor is not None
        assert build_stream(qplus, "powers(1/3)").growth_floor(3) == 2
        assert build_stream(qplus, "geometric(1/2)").growth_floor is None
        assert build_stream(free, "powers(x)").growth_floor is None


class TestNestedExpansion:
    def test_expansion_sums_to_factor(self, qplus):
        expand = nested_expansion(qplus, seed=0)
        inner = expand(StreamEntry(1, Fraction(1, 2)))
        assert inner.ambient_limit == Fraction(1, 2)
        assert expand(StreamEntry(1, Fraction(1, 2))).take(3) == inner.take(3)


class TestEvalProduct:
    def test_finite_product_normal_form(self, params):
        spec = StreamSpec(instance="qplus", factors=["1/2", "1/4", "1/2"])
        report = eval_product(spec, params)
        assert report.candidate == "5/4"
        assert report.status == "ConvergedAt"
        assert report.normal_form == ["1/2^2", "1/4"]
        assert report.normal_form_complete

    def test_geometric_limit(self):
        spec = StreamSpec(instance="qplus", rule="geometric(1/2)", level=10, depth=20)
        report = eval_product(spec, VerificationParams(qmax=10_000))
        assert report.candidate == "1"
        assert report.summary == "ConvergedAt(core={1..11}, k=10, D=20, path=monotone)"

    def test_limit_outside_carrier(self, params):
        spec = StreamSpec(instance="restricted", params={"window": 6}, rule="chi-from(1)")
        report = eval_product(spec, params)
        assert report.status == "DivergedWith"
        assert report.candidate is None

    def test_refuted_candidate(self, params):
        spec = StreamSpec(instance="qplus", rule="geometric(1/2)", candidate="1/2")
        report = eval_product(spec, params)
        assert report.status == "Refuted"
        assert report.candidate == "1/2"

    def test_infinite_repetition_has_no_normal_form(self, params):
        spec = StreamSpec(instance="free", rule="const(x)")
        report = eval_product(spec, params)
        assert report.status == "DivergedWith"
        assert report.normal_form == []
        assert not report.normal_form_complete
