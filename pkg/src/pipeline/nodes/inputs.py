"""Rebuild domain objects from the JSON payloads carried in the state."""

from typing import Optional, Tuple, Union

from ...exact.matrix import Matrix, is_positive_definite
from ...geometry.structures import StructureData
from ...ingestion.loaders import load_algebra, load_any_structure, load_metric
from ...lie.algebra import LieAlgebra
from ..state import DossierState

Structure = Union[StructureData, Tuple[Matrix, Matrix]]

INDEFINITE_METRIC = "metric is not symmetric positive definite"


def algebra_of(state: DossierState) -> LieAlgebra:
    return load_algebra(state["algebra"])


def structure_of(state: DossierState, dim: int) -> Optional[Structure]:
    payload = state.get("structure")
    if not payload:
        return None
    return load_any_structure(payload, dim)


def metric_of(state: DossierState, dim: int) -> Optional[Matrix]:
    """The explicit metric, else the one carried by the structure."""
    if state.get("metric"):
        return load_metric(state["metric"], dim)
    structure = structure_of(state, dim)
    if isinstance(structure, StructureData):
        return structure.g
    if structure is not None:
        return structure[1]
    return None


def riemannian_metric_of(state: DossierState, dim: int) -> Tuple[Optional[Matrix], bool]:
    """
    ``(g, indefinite)``: the metric when it is positive definite, else ``None``.

    An indefinite metric is left for the structure node to report as a failing stage.
    """
    g = metric_of(state, dim)
    if g is not None and not is_positive_definite(g):
        return None, True
    return g, False
