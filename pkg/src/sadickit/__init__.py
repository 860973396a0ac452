"""Executable finite content of S-adic recognizability and saturation theory.

The most used names are re-exported here; the submodules hold the rest.
"""

from .certify import Certificate, certify, rank_bounds
from .codes import analyze_code, is_circular, is_code, is_pure
from .directive import (
    DirectiveSequence,
    classify_sequence,
    compose_range,
    contract,
    factor_language,
    is_stable,
    periodicity_probe,
    return_words,
)
from .matrices import IntMatrix, family_substitution, i2, invertibility_report
from .recognizability import is_recognizable_seq, min_recognizability_constant, mosse_test
from .rees import rees_build, rees_induced_endo
from .semigroup import FiniteSemigroup, green_classification, is_aperiodic, omega_power, syntactic_semigroup
from .substitution import Substitution, apply, compose, primitivity_witness, properties
from .words import Alphabet, Word, factors, occurrences

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "Word",
    "factors",
    "occurrences",
    "Substitution",
    "apply",
    "compose",
    "properties",
    "primitivity_witness",
    "IntMatrix",
    "i2",
    "invertibility_report",
    "family_substitution",
    "DirectiveSequence",
    "compose_range",
    "contract",
    "factor_language",
    "classify_sequence",
    "is_stable",
    "periodicity_probe",
    "return_words",
    "analyze_code",
    "is_code",
    "is_circular",
    "is_pure",
    "FiniteSemigroup",
    "green_classification",
    "is_aperiodic",
    "omega_power",
    "syntactic_semigroup",
    "rees_build",
    "rees_induced_endo",
    "mosse_test",
    "min_recognizability_constant",
    "is_recognizable_seq",
    "Certificate",
    "certify",
    "rank_bounds",
]
