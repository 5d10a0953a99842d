"""State definitions for the report dossier graph."""

import operator
from typing import Annotated, Any, Dict, List, Optional, TypedDict


class DossierState(TypedDict):
    """
    State for the dossier workflow.

    Inputs are the JSON payloads of the algebra and the optional structure
    (``{"J", "xi", "alpha", "g"}`` in odd dimension, ``{"J", "g"}`` in even
    dimension) or bare metric. Every node adds one section.
    """

    # Input data
    algebra: Dict[str, Any]
    structure: Optional[Dict[str, Any]]
    metric: Optional[Dict[str, Any]]

    # Results
    sections: Annotated[Dict[str, Any], operator.or_]
    verdicts: Annotated[Dict[str, str], operator.or_]
    markdown: Annotated[List[str], operator.add]
    dossier: Dict[str, Any]

    # Processing status
    current_step: str
    errors: Annotated[List[str], operator.add]
    messages: Annotated[List[str], operator.add]


def create_initial_state(
    algebra: Dict[str, Any],
    structure: Optional[Dict[str, Any]] = None,
    metric: Optional[Dict[str, Any]] = None,
) -> DossierState:
    """Create the state a dossier run starts from."""
    return DossierState(
        algebra=algebra,
        structure=structure,
        metric=metric,
        sections={},
        verdicts={},
        markdown=[],
        dossier={},
        current_step="initialized",
        errors=[],
        messages=[],
    )
