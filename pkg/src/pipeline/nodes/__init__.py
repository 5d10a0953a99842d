"""LangGraph nodes for the dossier pipeline."""

from .validate_node import validate_node
from .classify_node import classify_node
from .cohomology_node import cohomology_node
from .structure_node import structure_node
from .curvature_node import curvature_node
from .foliated_node import foliated_node
from .dossier_node import assemble, dossier_node, render_markdown

__all__ = [
    "validate_node",
    "classify_node",
    "cohomology_node",
    "structure_node",
    "curvature_node",
    "foliated_node",
    "dossier_node",
    "assemble",
    "render_markdown",
]
