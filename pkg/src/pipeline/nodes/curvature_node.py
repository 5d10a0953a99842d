"""Curvature node: Levi-Civita connection, curvature and flatness."""

from typing import Any, Dict

from ...geometry.curvature import curvature_report, unimodular_flatness_report
from ...geometry.structures import StructureData
from ..state import DossierState
from .inputs import INDEFINITE_METRIC, algebra_of, riemannian_metric_of, structure_of


def curvature_node(state: DossierState) -> Dict[str, Any]:
    L = algebra_of(state)
    g, indefinite = riemannian_metric_of(state, L.dim)
    if indefinite:
        return {"current_step": "curvature", "messages": [f"{INDEFINITE_METRIC}; skipping curvature"]}
    if g is None:
        return {"current_step": "curvature", "messages": ["No metric given; skipping curvature"]}

    report = curvature_report(L, g)
    structure = structure_of(state, L.dim)
    markdown = [report.to_markdown()]
    sections: Dict[str, Any] = {"curvature": report.to_dict()}
    if isinstance(structure, StructureData):
        proposition = unimodular_flatness_report(L, structure)
        sections["unimodular_flatness"] = proposition.to_dict()
        markdown.append(proposition.to_markdown())
    return {
        "sections": sections,
        "verdicts": {"flat": str(report.passed).lower()},
        "markdown": markdown,
        "current_step": "curvature",
        "messages": [f"Curvature computed; flat: {report.passed}"],
    }
