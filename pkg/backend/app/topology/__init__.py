"""
Net convergence of countable products.

Usage:
    from app.topology import FactorStream, verify_convergence

    stream = FactorStream.from_rule(qplus, lambda k: Fraction(1, 2**k), start=1, label="geometric(1/2)")
    report = verify_convergence(stream, Fraction(1), level=10, depth=20)
"""

from .decimation import check_arbitrary_decimation, check_dissociation, check_finite_decimation
from .divergence import detect_divergence, growth_floor_witness, powers_diverge
from .net import (
    candidate_pool,
    eval_partial,
    find_limit,
    neighborhood_contains,
    prefix_products,
    separating_level,
    verify_convergence,
)
from .normal_form import NormalForm, multiset_normal_form, normal_form_stream
from .span import finite_span_contains
from .stream import FactorStream, StreamEntry, SubsetRule, disjoint_union
from .types import (
    Certificate,
    CheckOutcome,
    ConvergenceReport,
    ConvergenceStatus,
    DivergenceWitness,
    ExtensionPath,
    WitnessKind,
)

__all__ = [
    "FactorStream",
    "StreamEntry",
    "SubsetRule",
    "disjoint_union",
    "Certificate",
    "CheckOutcome",
    "ConvergenceReport",
    "ConvergenceStatus",
    "DivergenceWitness",
    "ExtensionPath",
    "WitnessKind",
    "NormalForm",
    "neighborhood_contains",
    "separating_level",
    "eval_partial",
    "prefix_products",
    "verify_convergence",
    "candidate_pool",
    "find_limit",
    "detect_divergence",
    "growth_floor_witness",
    "powers_diverge",
    "multiset_normal_form",
    "normal_form_stream",
    "check_arbitrary_decimation",
    "check_finite_decimation",
    "check_dissociation",
    "finite_span_contains",
]
