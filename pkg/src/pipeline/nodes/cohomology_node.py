"""Cohomology node: Betti numbers, Hodge dimensions and the Betti screen."""

from typing import Any, Dict

from ...forms.ce_complex import cohomology_report
from ..state import DossierState
from .inputs import INDEFINITE_METRIC, algebra_of, riemannian_metric_of


def cohomology_node(state: DossierState) -> Dict[str, Any]:
    L = algebra_of(state)
    g, indefinite = riemannian_metric_of(state, L.dim)
    report = cohomology_report(L, g)
    messages = [f"Betti numbers {report.data['betti']}"]
    if indefinite:
        report.notes.append(f"{INDEFINITE_METRIC}; Hodge dimensions skipped")
        messages.append(f"{INDEFINITE_METRIC}; skipping Hodge dimensions")
    return {
        "sections": {"cohomology": report.to_dict()},
        "verdicts": {"cohomology": report.verdict.value},
        "markdown": [report.to_markdown()],
        "current_step": "cohomology",
        "messages": messages,
    }
