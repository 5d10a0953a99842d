"""Dossier pipeline built as a LangGraph workflow."""

from .graph import DossierGraph, build_dossier, create_dossier_graph
from .state import DossierState, create_initial_state

__all__ = ["DossierGraph", "build_dossier", "create_dossier_graph", "DossierState", "create_initial_state"]
