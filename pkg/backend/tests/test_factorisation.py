"""Tests for exponent maps, Z(H) and the factorisation checks."""

from fractions import Fraction

import pytest

from app.factorisation import (
    ExponentMap,
    ZVerdict,
    divisibility_crosscheck,
    equivalence_chain_check,
    exponent_divides,
    factorisation_monoid,
    is_topologically_irreducible,
    order_ideal_check,
    pi_bar,
    pi_finite,
    topologically_prime_check,
    unique_factorisation_check,
    xi,
    xi_section_check,
    zh_add,
    zh_atoms_check,
)
from app.factorisation.uniqueness import exponent_mismatches
from app.instances import ONES, chi
from app.monoid import (
    ElementParseError,
    InfiniteSupportError,
    NotAnAtomError,
    NotInZError,
    OrderViolationError,
    UnitElementError,
    Verdict,
)
from app.monoid.types import Outcome


@pytest.fixture
def z_free(free, params):
    return factorisation_monoid(free, params)


@pytest.fixture
def z_restricted(restricted, params):
    return factorisation_monoid(restricted, params)


class TestExponentMap:
    def test_zero_entries_dropped(self):
        assert ExponentMap.of({"a": 0, "b": 2}) == ExponentMap.of({"b": 2})
        assert ExponentMap.of([("a", 1), ("a", 1)]).as_dict() == {"a": 2}

    def test_negative_base_rejected(self):
        with pytest.raises(ValueError, match="base must be non-negative"):
            ExponentMap(-1)


# ============================================================
# Z(H) over the free monoid
# ============================================================

class TestFreeFactorisationMonoid:
    def test_atoms_and_format(self, z_free, free):
        x, y = free.generator(0), free.generator(1)
        assert z_free.atoms == (x, y)
        m = ExponentMap.of({x: 2, y: 1})
        assert z_free.format(m) == "{x:2, y:1}"
        assert z_free.parse("{x:2, y:1}") == m

    def test_pi_finite(self, z_free, free):
        m = z_free.parse("{x:2, y:1}")
        assert pi_finite(m, z_free) == free.parse("x^2*y")
        report, value = pi_bar(m, z_free)
        assert report.in_z
        assert value == free.parse("x^2*y")

    def test_chi_of_non_atom(self, z_free, free):
        with pytest.raises(NotAnAtomError):
            z_free.chi(free.parse("x*y"))

    def test_parse_errors(self, z_free):
        with pytest.raises(ElementParseError, match="unknown atom 'q'"):
            z_free.parse("{q:1}")
        with pytest.raises(ElementParseError, match="negative exponent"):
            z_free.parse("{x:-1}")

    def test_addition_is_a_homomorphism(self, z_free, free):
        total, report = zh_add(z_free.parse("{x:1}"), z_free.parse("{y:1}"), z_free)
        assert total == z_free.parse("{x:1, y:1}")
        assert report.verdict is ZVerdict.IN_Z
        assert report.value == free.parse("x*y")

    def test_coordinate_maps_are_the_atoms(self, z_free, params):
        outcome = zh_atoms_check(z_free, params.bound)
        assert outcome.passed
        assert outcome.data["atoms"] == ["z_x", "z_y"]

    def test_xi_is_a_section(self, z_free):
        outcome = xi_section_check(z_free.parse("{x:1, y:1}"), z_free)
        assert outcome.passed
        assert outcome.data["mismatches"] == []

    def test_xi_needs_matching_monoids(self, z_free):
        with pytest.raises(ValueError, match="zz must be built over z"):
            xi(z_free.parse("{x:1}"), z_free, z_free)

    def test_unique_factorisation(self, free, params, z_free):
        outcome = unique_factorisation_check(free.parse("x^2*y"), free, params, z_free)
        assert outcome.passed
        assert outcome.data["factorisations"] == ["{x:2, y:1}"]
        assert outcome.data["exponents"] == {"x": 2, "y": 1}
        assert "mismatches" not in outcome.data

    def test_exponent_mismatches(self, free, z_free):
        x, y = free.generator(0), free.generator(1)
        b = free.parse("x^2*y")
        assert exponent_mismatches(ExponentMap.of({x: 2, y: 1}), b, z_free, 3) == {}
        assert exponent_mismatches(ExponentMap.of({x: 1, y: 1}), b, z_free, 3) == {"x": [1, 2]}

    def test_wrong_exponent_fails(self, free, params, z_free, monkeypatch):
        x, y = free.generator(0), free.generator(1)
        monkeypatch.setattr(
            "app.factorisation.uniqueness.finite_factorisations",
            lambda b, z, max_length: [ExponentMap.of({x: 1, y: 1})],
        )
        outcome = unique_factorisation_check(free.parse("x^2*y"), free, params, z_free)
        assert outcome.outcome is Outcome.FAIL
        assert outcome.data["mismatches"] == {"x": [1, 2]}
        assert "exponent of x" in outcome.detail

    def test_generators_topologically_irreducible(self, free, params, z_free):
        verdict = is_topologically_irreducible(free.generator(0), free, params=params, z=z_free)
        assert verdict.status is Verdict.YES

    def test_equivalence_chain(self, free, params, z_free):
        assert equivalence_chain_check(free, params, z_free).passed

    def test_generators_topologically_prime(self, free, params, z_free):
        verdict = topologically_prime_check(free.generator(0), free, params=params, z=z_free)
        assert verdict.status is Verdict.YES


# ============================================================
# Z(H) over the restricted sequence monoid
# ============================================================

class TestRestrictedFactorisationMonoid:
    def test_atom_order(self, z_restricted):
        assert z_restricted.atoms == tuple(chi(i) for i in range(6)) + (ONES,)
        assert z_restricted.atom_label(z_restricted.chi(ONES)) == "z_f"

    def test_family_labels_past_the_window(self, z_restricted):
        assert z_restricted.parse("{chi7:1}") == ExponentMap.of({chi(7): 1})

    def test_order_ideal_fails(self, z_restricted):
        ones = z_restricted.parse("base=ones")
        smaller = z_restricted.parse("base=ones; delta={chi0:-1}")
        outcome = order_ideal_check(ones, smaller, z_restricted)
        assert outcome.outcome is Outcome.FAIL
        assert outcome.witness is not None

    def test_order_ideal_requires_order(self, z_restricted):
        ones = z_restricted.parse("base=ones")
        smaller = z_restricted.parse("base=ones; delta={chi0:-1}")
        with pytest.raises(OrderViolationError):
            order_ideal_check(smaller, ones, z_restricted)

    def test_order_ideal_requires_membership(self, z_restricted):
        outside = z_restricted.parse("base=ones; delta={chi0:-1}")
        with pytest.raises(NotInZError):
            order_ideal_check(outside, z_restricted.parse("{chi1:1}"), z_restricted)

    def test_divisibility_disagrees(self, z_restricted):
        v = z_restricted.chi(chi(0))
        w = z_restricted.parse("base=ones")
        assert exponent_divides(v, w, z_restricted)
        outcome = divisibility_crosscheck(v, w, z_restricted)
        assert outcome.outcome is Outcome.FAIL
        assert outcome.data["divides"] is False

    def test_infinite_support_needs_pi_bar(self, z_restricted):
        with pytest.raises(InfiniteSupportError):
            pi_finite(z_restricted.parse("base=1"), z_restricted)

    def test_all_ones_is_not_topologically_prime(self, restricted, params, z_restricted):
        verdict = topologically_prime_check(ONES, restricted, params=params, z=z_restricted)
        assert verdict.status is Verdict.NO
        assert verdict.witness[0] == "atoms(base=ones)"

    def test_single_coordinate_is_topologically_prime(self, restricted, params, z_restricted):
        verdict = topologically_prime_check(chi(0), restricted, params=params, z=z_restricted)
        assert verdict.status is Verdict.YES

    def test_all_ones_has_two_factorisations(self, restricted, params, z_restricted):
        outcome = unique_factorisation_check(ONES, restricted, params, z_restricted)
        assert outcome.outcome is Outcome.FAIL
        assert outcome.data["factorisations"] == ["{f:1}", "base=ones"]


class TestTopologicalIrreducibility:
    def test_all_ones_is_a_convergent_product(self, restricted, params, z_restricted):
        verdict = is_topologically_irreducible(ONES, restricted, params=params, z=z_restricted)
        assert verdict.status is Verdict.NO
        assert verdict.witness == ("atoms(base=ones)",)

    def test_single_coordinate(self, restricted, params, z_restricted):
        verdict = is_topologically_irreducible(chi(0), restricted, params=params, z=z_restricted)
        assert verdict.status is Verdict.YES

    def test_qplus_finite_split(self, qplus, params):
        verdict = is_topologically_irreducible(Fraction(3, 4), qplus, params=params)
        assert verdict.status is Verdict.NO
        assert verdict.witness == (Fraction(3, 8), Fraction(3, 8))
        assert verdict.note == "finite split"

    def test_identity_rejected(self, qplus, params):
        with pytest.raises(UnitElementError):
            is_topologically_irreducible(Fraction(0), qplus, params=params)


class TestOrderIdealPointwise:
    def test_pointwise_order_ideal_holds(self, pointwise, params):
        z = factorisation_monoid(pointwise, params)
        outcome = order_ideal_check(
            z.parse("base=ones"), z.parse("base=ones; delta={chi0:-1}"), z
        )
        assert outcome.passed


class TestAtomlessInstances:
    def test_qplus_has_no_factorisations(self, qplus, params):
        outcome = unique_factorisation_check(Fraction(3, 4), qplus, params)
        assert outcome.outcome is Outcome.INCONCLUSIVE
        assert "atomless" in outcome.detail

    def test_harmonic_family_labels(self, harmonic, params):
        z = factorisation_monoid(harmonic, params)
        assert z.parse("{e9:1}") == ExponentMap.of({harmonic.basis(9): 1})
