"""
Factorisation layer: exponent maps, the topological factorisation monoid
Z(H) and the uniqueness / primality checks built on it.

Usage:
    from app.factorisation import factorisation_monoid, order_ideal_check

    z = factorisation_monoid(restricted)
    ones = z.parse("base=ones")
    outcome = order_ideal_check(ones, z.parse("base=ones; delta={chi0:-1}"), z)
"""

from .checks import (
    divisibility_crosscheck,
    exponent_divides,
    order_ideal_check,
    section_samples,
    xi_section_check,
    zh_add,
    zh_atoms_check,
    zh_net_convergence,
)
from .exponent_map import ExponentMap, ZMembershipReport, ZVerdict
from .primality import (
    atom_streams,
    equivalence_chain_check,
    is_topologically_irreducible,
    topologically_prime_check,
)
from .uniqueness import unique_factorisation_check
from .zmonoid import FactorisationMonoid, factorisation_monoid, pi_bar, pi_finite, xi

__all__ = [
    "ExponentMap",
    "ZMembershipReport",
    "ZVerdict",
    "FactorisationMonoid",
    "factorisation_monoid",
    "pi_finite",
    "pi_bar",
    "xi",
    "zh_add",
    "order_ideal_check",
    "exponent_divides",
    "divisibility_crosscheck",
    "zh_net_convergence",
    "zh_atoms_check",
    "xi_section_check",
    "section_samples",
    "topologically_prime_check",
    "is_topologically_irreducible",
    "atom_streams",
    "equivalence_chain_check",
    "unique_factorisation_check",
]
