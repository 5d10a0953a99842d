"""LangGraph workflow assembling the verification dossier of one algebra."""

import logging
from typing import Any, Dict, Optional

from langgraph.checkpoint.memory import MemorySaver
from langgraph.graph import END, StateGraph

from .nodes import (
    assemble,
    classify_node,
    cohomology_node,
    curvature_node,
    dossier_node,
    foliated_node,
    render_markdown,
    structure_node,
    validate_node,
)
from .state import DossierState, create_initial_state

logger = logging.getLogger(__name__)


def should_continue_after_validate(state: DossierState) -> str:
    """Stop on a parse error or a table that is not a Lie algebra."""
    if state.get("verdicts", {}).get("validate") != "pass":
        return "end"
    return "classify"


def should_run_foliated(state: DossierState) -> str:
    """The foliated checks need a cosymplectic structure."""
    if state.get("verdicts", {}).get("cosymplectic") == "pass":
        return "foliated"
    return "dossier"


def create_dossier_graph() -> StateGraph:
    """
    Create the dossier workflow.

    Flow:
    1. validate - antisymmetry and Jacobi
    2. classify - structural flags
    3. cohomology - Betti numbers, Hodge dimensions, Betti screen
    4. structure - cosymplectic (odd) or Kähler (even) chain
    5. curvature - connection, curvature, flatness
    6. foliated - Kähler identities, when the structure is cosymplectic
    7. dossier - canonical payload

    Returns:
        StateGraph ready to compile
    """
    workflow = StateGraph(DossierState)

    workflow.add_node("validate", validate_node)
    workflow.add_node("classify", classify_node)
    workflow.add_node("cohomology", cohomology_node)
    workflow.add_node("structure", structure_node)
    workflow.add_node("curvature", curvature_node)
    workflow.add_node("foliated", foliated_node)
    workflow.add_node("dossier", dossier_node)

    workflow.set_entry_point("validate")

    workflow.add_conditional_edges(
        "validate",
        should_continue_after_validate,
        {
            "classify": "classify",
            "end": END,
        },
    )
    workflow.add_edge("classify", "cohomology")
    workflow.add_edge("cohomology", "structure")
    workflow.add_edge("structure", "curvature")
    workflow.add_conditional_edges(
        "curvature",
        should_run_foliated,
        {
            "foliated": "foliated",
            "dossier": "dossier",
        },
    )
    workflow.add_edge("foliated", "dossier")
    workflow.add_edge("dossier", END)

    return workflow


class DossierGraph:
    """
    High-level interface for the dossier workflow.

    Usage:
        graph = DossierGraph()
        result = graph.run(algebra={...}, structure={...})
        dossier = result["dossier"]
    """

    def __init__(self, checkpointer: bool = False):
        self.workflow = create_dossier_graph()

        if checkpointer:
            self.memory = MemorySaver()
            self.app = self.workflow.compile(checkpointer=self.memory)
        else:
            self.app = self.workflow.compile()

    def run(
        self,
        algebra: Dict[str, Any],
        structure: Optional[Dict[str, Any]] = None,
        metric: Optional[Dict[str, Any]] = None,
        config: Optional[Dict[str, Any]] = None,
    ) -> DossierState:
        """
        Run the workflow.

        Args:
            algebra: Algebra JSON payload
            structure: Structure JSON payload (quadruple or ``(J, g)`` pair)
            metric: Metric JSON payload, used when no structure is given
            config: Optional run configuration

        Returns:
            Final state; ``dossier`` holds the assembled payload
        """
        initial_state = create_initial_state(algebra, structure, metric)
        run_config = config or {"configurable": {"thread_id": "dossier-1"}}
        result = self.app.invoke(initial_state, run_config)
        if not result.get("dossier"):
            result["dossier"] = assemble(result)
        for message in result.get("messages", []):
            logger.info(message)
        return result

    def stream(
        self,
        algebra: Dict[str, Any],
        structure: Optional[Dict[str, Any]] = None,
        metric: Optional[Dict[str, Any]] = None,
        config: Optional[Dict[str, Any]] = None,
    ):
        """
        Stream the workflow execution.

        Yields:
            State updates from each node
        """
        initial_state = create_initial_state(algebra, structure, metric)
        run_config = config or {"configurable": {"thread_id": "dossier-1"}}
        for event in self.app.stream(initial_state, run_config):
            yield event

    def get_graph_visualization(self) -> str:
        """Get Mermaid diagram of the graph."""
        return self.app.get_graph().draw_mermaid()


def build_dossier(
    algebra: Dict[str, Any],
    structure: Optional[Dict[str, Any]] = None,
    metric: Optional[Dict[str, Any]] = None,
) -> Dict[str, Any]:
    """
    Convenience function: run the workflow and return the dossier with its
    markdown rendering under ``"markdown"``.
    """
    graph = DossierGraph(checkpointer=False)
    result = graph.run(algebra=algebra, structure=structure, metric=metric)
    return {"dossier": result["dossier"], "markdown": render_markdown(result)}
