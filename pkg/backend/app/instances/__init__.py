"""Concrete topological monoids."""

from .free import FreeElement, FreeMonoid
from .harmonic import HarmonicElement, HarmonicMonoid, harmonic_phi
from .integers import IntegersDemo
from .qplus import QPlus, denominator_exclusion
from .sequences import ONES, PointwiseSequences, RestrictedSequences, SequenceElement, chi
from .series import SeriesElement, SeriesMonoid

__all__ = [
    "FreeElement",
    "FreeMonoid",
    "HarmonicElement",
    "HarmonicMonoid",
    "harmonic_phi",
    "IntegersDemo",
    "QPlus",
    "denominator_exclusion",
    "ONES",
    "PointwiseSequences",
    "RestrictedSequences",
    "SequenceElement",
    "chi",
    "SeriesElement",
    "SeriesMonoid",
]
