"""Dossier node: assemble the canonical JSON and the markdown rendering."""

from typing import Any, Dict

from ..state import DossierState

SECTION_ORDER = ("validate", "classify", "cohomology", "structure", "curvature", "unimodular_flatness", "foliated")


def assemble(state: DossierState) -> Dict[str, Any]:
    """The dossier payload; also used when the run ended after validation."""
    algebra = state.get("algebra") or {}
    subject = algebra.get("name") or f"algebra of dimension {algebra.get('dim', '?')}"
    sections = state.get("sections", {})
    return {
        "subject": subject,
        "verdicts": dict(sorted(state.get("verdicts", {}).items())),
        "sections": {name: sections[name] for name in SECTION_ORDER if name in sections},
        "errors": list(state.get("errors", [])),
    }


def render_markdown(state: DossierState) -> str:
    algebra = state.get("algebra") or {}
    title = algebra.get("name") or f"algebra of dimension {algebra.get('dim', '?')}"
    parts = [f"# Dossier: {title}", ""]
    verdicts = state.get("verdicts", {})
    if verdicts:
        parts.extend(f"- **{key}**: {value}" for key, value in sorted(verdicts.items()))
        parts.append("")
    parts.extend(state.get("markdown", []))
    for error in state.get("errors", []):
        parts.append(f"> error: {error}")
    return "\n".join(parts).rstrip() + "\n"


def dossier_node(state: DossierState) -> Dict[str, Any]:
    return {
        "dossier": assemble(state),
        "current_step": "dossier",
        "messages": ["Dossier assembled"],
    }
