"""Tests for net convergence, divergence witnesses, normal forms and decimation."""

from fractions import Fraction

import pytest

from app.instances import ONES, SequenceElement
from app.instances.series import SeriesElement
from app.monoid import FiniteMultiplicityError, UnitElementError, Verdict, VerificationParams
from app.services.product_service import build_stream
from app.topology import (
    ConvergenceStatus,
    ExtensionPath,
    FactorStream,
    SubsetRule,
    WitnessKind,
    check_arbitrary_decimation,
    check_dissociation,
    check_finite_decimation,
    detect_divergence,
    find_limit,
    finite_span_contains,
    growth_floor_witness,
    multiset_normal_form,
    neighborhood_contains,
    normal_form_stream,
    powers_diverge,
    prefix_products,
    verify_convergence,
)
from app.topology.stream import StreamEntry


# ============================================================
# verify_convergence
# ============================================================

class TestVerifyConvergence:
    def test_geometric_series_converges_to_one(self, qplus):
        stream = build_stream(qplus, "geometric(1/2)")
        report = verify_convergence(stream, Fraction(1), level=10, depth=20)
        assert report.status is ConvergenceStatus.CONVERGED_AT
        assert report.certificate.core == tuple(range(1, 12))
        assert report.certificate.path is ExtensionPath.MONOTONE
        assert report.summary() == "ConvergedAt(core={1..11}, k=10, D=20, path=monotone)"

    def test_candidate_below_partial_sums_is_refuted(self, qplus):
        stream = build_stream(qplus, "geometric(1/2)")
        report = verify_convergence(stream, Fraction(1, 2), level=10, depth=20)
        assert report.status is ConvergenceStatus.REFUTED
        assert report.witness.kind is WitnessKind.DOMINANCE
        assert report.witness.data["prefix"] == 2
        assert report.witness.data["level"] == 2

    def test_finite_product_exhaustive(self, free):
        x, y = free.generator(0), free.generator(1)
        stream = FactorStream.from_factors(free, [x, y])
        report = verify_convergence(stream, free.parse("x*y"), level=3, depth=10)
        assert report.converged
        assert report.certificate.core == (0, 1)
        assert report.certificate.path is ExtensionPath.EXHAUSTIVE

    def test_wrong_finite_limit_is_refuted(self, free):
        stream = FactorStream.from_factors(free, [free.generator(0), free.generator(1)])
        report = verify_convergence(stream, free.generator(0), level=3, depth=10)
        assert report.status is ConvergenceStatus.REFUTED

    def test_slow_geometric_series_is_not_divergent(self, qplus):
        stream = build_stream(qplus, "geometric(9/10)")
        assert detect_divergence(stream, VerificationParams(depth=32)) is None
        report = verify_convergence(stream, Fraction(9), level=1, depth=32)
        assert report.status is ConvergenceStatus.CONVERGED_AT
        assert report.certificate.core == tuple(range(1, 29))

    def test_exact_limit_skips_denominator_exclusion(self, qplus):
        stream = build_stream(qplus, "geometric(1/1002)")
        assert stream.ambient_limit == Fraction(1, 1001)
        params = VerificationParams(qmax=1000)
        assert detect_divergence(stream, params.with_overrides(depth=8)) is None
        report = verify_convergence(stream, Fraction(1, 1001), level=10, depth=8, params=params)
        assert report.status is ConvergenceStatus.CONVERGED_AT
        assert report.certificate.core == (1,)

    def test_candidate_outside_carrier(self, series):
        stream = FactorStream.from_factors(series, [series.variable(0)])
        outside = SeriesElement((((0, 0), Fraction(2)),), True)
        report = verify_convergence(stream, outside, level=3, depth=10)
        assert report.status is ConvergenceStatus.REFUTED
        assert report.note == "candidate is not in the carrier"

    def test_depth_must_be_positive(self, qplus):
        with pytest.raises(ValueError, match="depth must be at least 1"):
            verify_convergence(build_stream(qplus, "geometric(1/2)"), Fraction(1), 3, 0)

    def test_negative_level_rejected(self, qplus):
        with pytest.raises(ValueError, match="level must be non-negative"):
            neighborhood_contains(qplus, Fraction(1), -1, Fraction(1))


# ============================================================
# find_limit and divergence
# ============================================================

class TestFindLimit:
    def test_geometric_third_uses_ambient_limit(self, qplus):
        report = find_limit(build_stream(qplus, "geometric(1/3)"), VerificationParams())
        assert report.converged
        assert report.candidate == Fraction(1, 2)

    def test_all_ones_pointwise(self, pointwise, params):
        report = find_limit(build_stream(pointwise, "chi-all"), params)
        assert report.converged
        assert report.candidate == ONES

    def test_limit_outside_restricted_carrier(self, restricted, params):
        report = find_limit(build_stream(restricted, "chi-from(1)"), params)
        assert report.status is ConvergenceStatus.DIVERGED_WITH
        assert report.witness.kind is WitnessKind.OUTSIDE_CARRIER
        assert report.witness.data["zero_at"] == 0
        assert report.candidate is None

    def test_constant_stream_diverges(self, free, params):
        report = find_limit(build_stream(free, "const(x)"), params)
        assert report.diverged
        assert report.witness.data["count"] == params.depth

    def test_harmonic_growth(self, harmonic, params):
        report = find_limit(build_stream(harmonic, "harmonic-from(1)"), params)
        assert report.diverged
        assert report.witness.kind is WitnessKind.UNBOUNDED
        assert "floor grows without limit" in report.witness.detail
        assert report.witness.data["floor"] == "2"

    def test_powers_grow_without_limit(self, qplus, params):
        report = find_limit(build_stream(qplus, "powers(1/2)"), params)
        assert report.diverged
        assert report.witness.data["floor"] == "150"

    def test_no_floor_no_growth_witness(self, qplus, params):
        stream = build_stream(qplus, "geometric(1/2)")
        values = [stream.value(e) for e in stream.take(params.depth)]
        assert growth_floor_witness(stream, values) is None

    def test_lacunary_sum_excluded_by_denominators(self, qplus):
        params = VerificationParams(depth=8, qmax=1000)
        sub = build_stream(qplus, "geometric(1/2)").select(SubsetRule("squares"))
        witness = detect_divergence(sub, params)
        assert witness.kind is WitnessKind.DENOMINATOR_EXCLUSION
        assert witness.data["qmax"] == 1000

    def test_finite_streams_never_diverge(self, free, params):
        stream = FactorStream.from_factors(free, [free.generator(0)] * 30)
        assert detect_divergence(stream, params) is None


class TestPowersDiverge:
    def test_powers_of_non_unit(self, free, qplus):
        assert powers_diverge(free, free.generator(0), 30, 5)
        assert powers_diverge(qplus, Fraction(1, 2), 30, 5)

    def test_identity_rejected(self, free):
        with pytest.raises(UnitElementError):
            powers_diverge(free, free.identity, 30, 5)


# ============================================================
# Normal forms and spans
# ============================================================

class TestNormalForm:
    def test_collapse_repeats(self, free):
        x, y = free.generator(0), free.generator(1)
        stream = FactorStream.from_factors(free, [x, y, x])
        form = multiset_normal_form(stream, 10)
        assert form.counts == ((x, 2), (y, 1))
        assert form.first_index == (0, 1)
        assert form.complete
        assert form.multiplicity(free.parse("x^2")) == 0
        reduced = normal_form_stream(stream, form)
        assert prefix_products(reduced, 10)[-1] == prefix_products(stream, 10)[-1]

    def test_infinite_repetition_rejected(self, free):
        with pytest.raises(FiniteMultiplicityError):
            multiset_normal_form(build_stream(free, "const(x)"), 24)


class TestFiniteSpan:
    def test_member_with_witness(self, free):
        target = free.parse("x^2*y")
        verdict = finite_span_contains(free, [free.generator(0), free.generator(1)], target, 3)
        assert verdict.status is Verdict.YES
        assert free.product(verdict.witness) == target

    def test_degree_bound_reached(self, free):
        verdict = finite_span_contains(
            free, [free.generator(0), free.generator(1)], free.parse("x^2*y"), 2
        )
        assert verdict.status is Verdict.UNKNOWN

    def test_not_a_member(self, free):
        verdict = finite_span_contains(free, [free.generator(0)], free.generator(1), 3)
        assert verdict.status is Verdict.NO


# ============================================================
# Decimation and dissociation
# ============================================================

class TestDecimation:
    def test_qplus_finite_decimation(self, qplus, params):
        outcome = check_finite_decimation(build_stream(qplus, "geometric(1/2)"), [1], params=params)
        assert outcome.passed
        assert outcome.limit == Fraction(1, 2)

    def test_restricted_finite_decimation_fails(self, restricted, params):
        outcome = check_finite_decimation(build_stream(restricted, "chi-all"), [0], params=params)
        assert outcome.outcome.value == "FAIL"
        assert outcome.witness.kind is WitnessKind.OUTSIDE_CARRIER

    def test_pointwise_squares_converge_coordinatewise(self, pointwise, params):
        outcome = check_arbitrary_decimation(
            build_stream(pointwise, "chi-all"), SubsetRule("squares"), params=params, parent_limit=ONES
        )
        assert outcome.passed
        assert "coordinatewise" in outcome.detail

    def test_finite_selection(self, pointwise, params):
        outcome = check_arbitrary_decimation(
            build_stream(pointwise, "chi-all"), SubsetRule("indices", (1, 2)), params=params
        )
        assert outcome.passed
        assert outcome.limit == SequenceElement.of(0, {1: 1, 2: 1})

    def test_qplus_squares_fail(self, qplus):
        params = VerificationParams(depth=16, qmax=1000)
        outcome = check_arbitrary_decimation(
            build_stream(qplus, "geometric(1/2)"), SubsetRule("squares"), params=params
        )
        assert outcome.outcome.value == "FAIL"
        assert outcome.witness.kind is WitnessKind.DENOMINATOR_EXCLUSION


class TestDissociation:
    def test_finite_halves(self, qplus, params):
        outer = FactorStream.from_factors(qplus, [Fraction(1, 2), Fraction(1, 4)])

        def halves(entry: StreamEntry):
            return FactorStream.from_factors(qplus, [entry.factor / 2, entry.factor / 2])

        outcome = check_dissociation(outer, halves, params)
        assert outcome.passed
        assert outcome.limit == Fraction(3, 4)

    def test_integer_pairs_break_dissociation(self, integers, params):
        outer = FactorStream.from_rule(integers, lambda _j: 0, start=0, label="zeros")

        def pair(entry: StreamEntry):
            k = entry.index + 1
            return FactorStream.from_factors(integers, [k, -k])

        outcome = check_dissociation(outer, pair, params, outer_limit=0)
        assert outcome.outcome.value == "FAIL"
        assert outcome.witness.kind is WitnessKind.UNBOUNDED
        assert outcome.data["expansions_checked"] == 6

    def test_expansion_must_converge_to_its_factor(self, qplus, params):
        outer = FactorStream.from_factors(qplus, [Fraction(1, 2), Fraction(1, 4)])

        def quarters(entry: StreamEntry):
            return FactorStream.from_factors(qplus, [entry.factor / 4, entry.factor / 4])

        outcome = check_dissociation(outer, quarters, params)
        assert outcome.outcome.value == "INCONCLUSIVE"
        assert outcome.data["index"] == 0
        assert "not certified to converge to 1/2" in outcome.detail
