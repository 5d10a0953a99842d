"""Foliated node: leafwise Kähler identities and the bigraded groups."""

from typing import Any, Dict

from ...forms.foliated import check_kahler_identities, hbar_groups
from ..state import DossierState
from .inputs import algebra_of, structure_of


def foliated_node(state: DossierState) -> Dict[str, Any]:
    """
    Kähler identities on every bidegree and the dimensions of the
    ``H^{0,r,s}`` groups. Only reached when the cosymplectic check passed.
    """
    L = algebra_of(state)
    S = structure_of(state, L.dim)
    report = check_kahler_identities(L, S)
    leaf_dim = L.dim - 1
    report.data["hbar"] = {
        f"({r},{s})": dim
        for v in range(leaf_dim + 1)
        for (r, s), dim in sorted(hbar_groups(L, S, v).items())
    }
    return {
        "sections": {"foliated": report.to_dict()},
        "verdicts": {"kahler_identities": report.verdict.value},
        "markdown": [report.to_markdown()],
        "current_step": "foliated",
        "messages": [f"Kähler identities: {report.verdict.value}"],
    }
