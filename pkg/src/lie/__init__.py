"""Lie algebras by structure constants, validation and classification."""

from .algebra import LieAlgebra, ad, bracket, default_names, is_derivation, semidirect_extend, trace_form, validate
from .classify import ClassificationFlags, SolvabilityProof, classify, completely_solvable, is_unimodular

__all__ = [
    "LieAlgebra",
    "ad",
    "bracket",
    "default_names",
    "is_derivation",
    "semidirect_extend",
    "trace_form",
    "validate",
    "ClassificationFlags",
    "SolvabilityProof",
    "classify",
    "completely_solvable",
    "is_unimodular",
]
