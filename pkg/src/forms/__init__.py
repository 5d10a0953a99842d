"""Exterior forms, the Chevalley-Eilenberg complex and its foliated bigrading."""

from .exterior import KForm, contraction_operator, derivation_extension, monomials, wedge_operator
from .operators import GradedOperator
from .ce_complex import (
    CEOperators,
    HodgeDecomposition,
    betti,
    build_ce_operators,
    ce_differential,
    check_betti_conditions,
    cohomology_report,
    hodge,
    screen_torus_profile,
)
from .foliated import (
    AdaptedFrame,
    AdjointConvention,
    BigradedForm,
    FoliatedOperators,
    adapted_frame,
    bigrade,
    check_harmonic_identification,
    check_kahler_identities,
    component_operators,
    hbar_groups,
)

__all__ = [
    "KForm",
    "contraction_operator",
    "derivation_extension",
    "monomials",
    "wedge_operator",
    "GradedOperator",
    "CEOperators",
    "HodgeDecomposition",
    "betti",
    "build_ce_operators",
    "ce_differential",
    "check_betti_conditions",
    "cohomology_report",
    "hodge",
    "screen_torus_profile",
    "AdaptedFrame",
    "AdjointConvention",
    "BigradedForm",
    "FoliatedOperators",
    "adapted_frame",
    "bigrade",
    "check_harmonic_identification",
    "check_kahler_identities",
    "component_operators",
    "hbar_groups",
]
