"""Structures on Lie algebras, curvature, the Kähler-cosymplectic correspondence and deformations."""

from .structures import (
    StructureData,
    fundamental_form,
    nijenhuis,
    verify_almost_contact,
    verify_cosymplectic,
    verify_kahler,
    verify_normal,
)
from .curvature import curvature, curvature_report, levi_civita, unimodular_flatness_report
from .correspondence import (
    DerivationData,
    KahlerAlgebra,
    check_derivation_data,
    check_modification_map,
    check_normal_j_algebra,
    extend,
    modify,
    reduce,
)
from .deformation import (
    ConjugatedFamily,
    JtFamily,
    assemble_E,
    auxiliary_metric,
    deform,
    evaluate_family,
    kernel_dimensions,
    largest_stable_parameter,
    stabilize,
)

__all__ = [
    "StructureData",
    "fundamental_form",
    "nijenhuis",
    "verify_almost_contact",
    "verify_cosymplectic",
    "verify_kahler",
    "verify_normal",
    "curvature",
    "curvature_report",
    "levi_civita",
    "unimodular_flatness_report",
    "DerivationData",
    "KahlerAlgebra",
    "check_derivation_data",
    "check_modification_map",
    "check_normal_j_algebra",
    "extend",
    "modify",
    "reduce",
    "ConjugatedFamily",
    "JtFamily",
    "assemble_E",
    "auxiliary_metric",
    "deform",
    "evaluate_family",
    "kernel_dimensions",
    "largest_stable_parameter",
    "stabilize",
]
