"""Classify node: structural flags and series dimensions."""

from typing import Any, Dict

from ...lie.classify import classify, derived_series, lower_central_series
from ...report import Report, passed
from ..state import DossierState
from .inputs import algebra_of


def classify_node(state: DossierState) -> Dict[str, Any]:
    L = algebra_of(state)
    flags = classify(L)
    report = Report(
        subject=f"classification of {L.name or L.dim}",
        data={
            **flags.to_dict(),
            "derived_series": derived_series(L),
            "lower_central_series": lower_central_series(L),
        },
    )
    report.add(passed("classified"))
    return {
        "sections": {"classify": report.to_dict()},
        "verdicts": {"unimodular": str(flags.unimodular).lower()},
        "markdown": [report.to_markdown()],
        "current_step": "classified",
        "messages": [f"Classified {L.name or L.dim}: completely solvable {flags.completely_solvable.value}"],
    }
