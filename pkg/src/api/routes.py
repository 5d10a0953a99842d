"""API routes mirroring the CLI verbs."""

import logging
from typing import Callable, TypeVar

from fastapi import APIRouter, HTTPException

from .. import catalogue
from ..errors import InvariantBreach, ParseError, PreconditionError, UnknownEntryError
from ..forms.ce_complex import cohomology_report
from ..forms.foliated import check_kahler_identities
from ..geometry.curvature import curvature_report
from ..geometry.structures import verify_almost_contact, verify_cosymplectic, verify_kahler, verify_normal
from ..ingestion.loaders import load_algebra, load_lie_algebra, load_metric, load_pair, load_structure
from ..ingestion.serialize import algebra_to_dict, kahler_to_dict, structure_to_dict
from ..lie.algebra import validate
from ..lie.classify import classify, derived_series, lower_central_series
from ..pipeline.graph import build_dossier
from .schemas import (
    AlgebraRequest,
    CatalogueEntryResponse,
    CatalogueListResponse,
    ClassifyResponse,
    CohomologyRequest,
    CurvatureRequest,
    DossierResponse,
    ReportRequest,
    ReportResponse,
    StructureKind,
    StructureRequest,
    VerifyRequest,
)

logger = logging.getLogger(__name__)

router = APIRouter()

T = TypeVar("T")


def _guarded(fn: Callable[[], T]) -> T:
    """Map library errors to HTTP status codes."""
    try:
        return fn()
    except (ParseError, PreconditionError) as e:
        raise HTTPException(status_code=422, detail=str(e))
    except InvariantBreach as e:
        logger.error("invariant breach: %s", e)
        raise HTTPException(status_code=500, detail=str(e))


# ============== Algebra Endpoints ==============

@router.post("/validate", response_model=ReportResponse)
async def validate_algebra(request: AlgebraRequest):
    """Antisymmetry and Jacobi on basis triples."""
    return _guarded(lambda: validate(load_algebra(request.algebra)).to_dict())


@router.post("/classify", response_model=ClassifyResponse)
async def classify_algebra(request: AlgebraRequest):
    """Abelian, nilpotent, solvable, unimodular and completely solvable flags."""
    def run():
        L = load_lie_algebra(request.algebra)
        return {**classify(L).to_dict(), "derived_series": derived_series(L), "lower_central_series": lower_central_series(L)}

    return _guarded(run)


@router.post("/cohomology", response_model=ReportResponse)
async def cohomology(request: CohomologyRequest):
    """Betti numbers, optional Hodge dimensions and the Betti screen."""
    def run():
        L = load_lie_algebra(request.algebra)
        g = load_metric(request.metric, L.dim) if request.metric else None
        return cohomology_report(L, g).to_dict()

    return _guarded(run)


@router.post("/curvature", response_model=ReportResponse)
async def curvature(request: CurvatureRequest):
    """Levi-Civita connection, curvature components and flatness."""
    def run():
        L = load_lie_algebra(request.algebra)
        return curvature_report(L, load_metric(request.metric, L.dim)).to_dict()

    return _guarded(run)


# ============== Structure Endpoints ==============

@router.post("/verify", response_model=ReportResponse)
async def verify(request: VerifyRequest):
    """Staged verification of an almost contact, normal, cosymplectic or Kähler structure."""
    def run():
        L = load_lie_algebra(request.algebra)
        if request.kind == StructureKind.KAHLER:
            J, g = load_pair(request.structure, L.dim)
            return verify_kahler(L, J, g).to_dict()
        S = load_structure(request.structure, L.dim)
        verifier = {
            StructureKind.ALMOST_CONTACT: verify_almost_contact,
            StructureKind.NORMAL: verify_normal,
            StructureKind.COSYMPLECTIC: verify_cosymplectic,
        }[request.kind]
        return verifier(L, S).to_dict()

    return _guarded(run)


@router.post("/kahler-identities", response_model=ReportResponse)
async def kahler_identities(request: StructureRequest):
    """Leafwise Kähler identities on every bidegree."""
    def run():
        L = load_lie_algebra(request.algebra)
        return check_kahler_identities(L, load_structure(request.structure, L.dim)).to_dict()

    return _guarded(run)


@router.post("/report", response_model=DossierResponse)
async def report(request: ReportRequest):
    """Full pipeline dossier."""
    return _guarded(lambda: build_dossier(request.algebra, request.structure, request.metric))


# ============== Catalogue Endpoints ==============

@router.get("/catalogue", response_model=CatalogueListResponse)
async def list_catalogue():
    return CatalogueListResponse(names=catalogue.list_names())


@router.get("/catalogue/{name}", response_model=CatalogueEntryResponse)
async def get_catalogue_entry(name: str):
    """One entry with its expected-property map."""
    try:
        entry = catalogue.get(name)
    except UnknownEntryError as e:
        raise HTTPException(status_code=404, detail=str(e))
    structure = None
    if entry.structure is not None:
        structure = structure_to_dict(entry.structure)
    elif entry.kahler is not None:
        structure = {k: v for k, v in kahler_to_dict(entry.kahler).items() if k != "algebra"}
    return CatalogueEntryResponse(
        name=entry.name,
        dim=entry.algebra.dim,
        algebra=algebra_to_dict(entry.algebra),
        structure=structure,
        expected=entry.expected,
        notes=list(entry.notes),
    )
