"""Finite-semigroup lab for twisted cosine and sine functional equations."""

from .equations import EquationTag, equation_residual
from .families import FamilyCase, Unclassified, classify, construct, lemma_m_reduce
from .oracle import SolverConfig, SolutionReport, find_all_solutions
from .semigroup import (
    Automorphism,
    FiniteSemigroup,
    enumerate_automorphisms,
    enumerate_semigroups,
    validate_table,
)

__version__ = "0.1.0"

__all__ = [
    "Automorphism",
    "EquationTag",
    "FamilyCase",
    "FiniteSemigroup",
    "SolutionReport",
    "SolverConfig",
    "Unclassified",
    "classify",
    "construct",
    "enumerate_automorphisms",
    "enumerate_semigroups",
    "equation_residual",
    "find_all_solutions",
    "lemma_m_reduce",
    "validate_table",
]
