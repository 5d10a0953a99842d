"""Structure node: the cosymplectic chain in odd dimension, Kähler in even."""

from typing import Any, Dict

from ...geometry.structures import StructureData, verify_cosymplectic, verify_kahler
from ..state import DossierState
from .inputs import algebra_of, structure_of


def structure_node(state: DossierState) -> Dict[str, Any]:
    L = algebra_of(state)
    structure = structure_of(state, L.dim)
    if structure is None:
        return {"current_step": "structure", "messages": ["No structure given; skipping structure checks"]}

    if isinstance(structure, StructureData):
        kind, report = "cosymplectic", verify_cosymplectic(L, structure)
    else:
        J, g = structure
        kind, report = "kahler", verify_kahler(L, J, g)

    messages = [f"{kind} verification: {report.verdict.value}"]
    if report.failed_stage is not None:
        messages.append(f"First failing stage: {report.failed_stage.name}")
    return {
        "sections": {"structure": {"kind": kind, **report.to_dict()}},
        "verdicts": {kind: report.verdict.value},
        "markdown": [report.to_markdown()],
        "current_step": "structure",
        "messages": messages,
    }
