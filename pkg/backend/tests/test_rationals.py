"""Tests for the exact rational helpers and the element text parsers."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from app.monoid import ElementParseError
from app.utils.parsing import parse_braced_map, parse_count, split_base_delta
from app.utils.rationals import (
    bounded_fraction_in,
    denominator_sweep,
    dyadic_ball_contains,
    dyadic_level,
    farey_neighbors,
    simplest_between,
)

fractions = st.fractions(min_value=0, max_value=4, max_denominator=300)
bounds = st.integers(min_value=1, max_value=40)


class TestFareyNeighbors:
    def test_representable_value_is_its_own_neighbour(self):
        assert farey_neighbors(Fraction(1, 3), 10) == (Fraction(1, 3), Fraction(1, 3))

    def test_neighbours_in_farey_sequence(self):
        assert farey_neighbors(Fraction(5, 17), 5) == (Fraction(1, 4), Fraction(1, 3))

    def test_qmax_must_be_positive(self):
        with pytest.raises(ValueError, match="qmax must be positive"):
            farey_neighbors(Fraction(1, 2), 0)


@given(fractions, bounds)
def test_farey_neighbours_bracket_and_are_tight(x, qmax):
    lo, hi = farey_neighbors(x, qmax)
    assert lo <= x <= hi
    assert lo.denominator <= qmax and hi.denominator <= qmax
    if x.denominator > qmax:
        # Distinct fractions with denominators <= qmax are at least 1/qmax^2 apart.
        assert denominator_sweep(lo + Fraction(1, 2 * qmax * qmax), x, qmax) is None


@given(fractions, fractions, bounds)
def test_bounded_fraction_agrees_with_sweep(a, b, qmax):
    lo, hi = min(a, b), max(a, b)
    found = bounded_fraction_in(lo, hi, qmax)
    swept = denominator_sweep(lo, hi, qmax)
    assert (found is None) == (swept is None)
    if found is not None:
        assert lo <= found <= hi
        assert found.denominator <= swept.denominator


class TestSimplestBetween:
    def test_integer_inside(self):
        assert simplest_between(Fraction(3, 2), Fraction(5, 2)) == 2
        assert simplest_between(Fraction(2), Fraction(3)) == 2

    def test_fraction(self):
        assert simplest_between(Fraction(3, 10), Fraction(2, 5)) == Fraction(1, 3)

    def test_rejects_reversed_interval(self):
        with pytest.raises(ValueError):
            simplest_between(Fraction(1), Fraction(1, 2))


class TestDyadic:
    def test_levels(self):
        assert dyadic_level(Fraction(1)) == 0
        assert dyadic_level(Fraction(1, 3)) == 2
        assert dyadic_level(Fraction(1, 4)) == 2

    def test_distance_must_be_positive(self):
        with pytest.raises(ValueError):
            dyadic_level(Fraction(0))

    def test_balls_are_open(self):
        assert dyadic_ball_contains(Fraction(1), 2, Fraction(9, 8))
        assert not dyadic_ball_contains(Fraction(1), 2, Fraction(5, 4))


class TestParsing:
    def test_braced_map(self):
        assert parse_braced_map("{a:1, b:+2, 3:-1}") == [("a", 1), ("b", 2), ("3", -1)]
        assert parse_braced_map(" {} ") == []

    def test_duplicate_key(self):
        with pytest.raises(ElementParseError, match="duplicate key 'a'"):
            parse_braced_map("{a:1, a:2}")

    def test_unclosed_map(self):
        with pytest.raises(ElementParseError, match="expected '}'"):
            parse_braced_map("{a:1")

    def test_split_base_delta(self):
        assert split_base_delta("base=1") == ("1", "{}", 6)
        base, delta, offset = split_base_delta("base=0; delta={2:1}")
        assert (base, delta) == ("0", "{2:1}")
        assert "base=0; delta={2:1}"[offset:] == "{2:1}"
        assert split_base_delta("x^2") is None

    def test_parse_count(self):
        assert parse_count(" 3 ", "base", "base=3", 5) == 3
        with pytest.raises(ElementParseError, match="base must be non-negative"):
            parse_count("-1", "base", "base=-1", 5)
