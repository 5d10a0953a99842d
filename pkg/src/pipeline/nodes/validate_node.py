"""Validate node: antisymmetry and Jacobi on the input table."""

import logging
from typing import Any, Dict

from ...errors import ParseError
from ...lie.algebra import validate
from ..state import DossierState
from .inputs import algebra_of

logger = logging.getLogger(__name__)


def validate_node(state: DossierState) -> Dict[str, Any]:
    """
    Parse the algebra and check it is a Lie algebra.

    A parse error or a failed Jacobi check ends the run early; the
    dossier then carries only this section.
    """
    messages = ["Validating structure constants..."]
    try:
        L = algebra_of(state)
    except ParseError as exc:
        logger.info("dossier input rejected: %s", exc)
        return {
            "current_step": "validated",
            "verdicts": {"validate": "reject"},
            "errors": [f"fatal: {exc}"],
            "messages": messages,
        }

    report = validate(L)
    messages.append(f"Validation of {L.name or L.dim}: {report.verdict.value}")
    return {
        "sections": {"validate": report.to_dict()},
        "verdicts": {"validate": report.verdict.value},
        "markdown": [report.to_markdown()],
        "current_step": "validated",
        "messages": messages,
    }
