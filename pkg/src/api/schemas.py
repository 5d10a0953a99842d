"""Pydantic schemas for API request/response models."""

from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class StructureKind(str, Enum):
    """Which verifier the verify route runs."""
    ALMOST_CONTACT = "almost-contact"
    NORMAL = "normal"
    COSYMPLECTIC = "cosymplectic"
    KAHLER = "kahler"


# ============== Request Models ==============
# Payloads stay plain dicts here; the ingestion schemas validate them so
# the API and the CLI report the same field paths.

class AlgebraRequest(BaseModel):
    """Request carrying one algebra."""
    algebra: Dict[str, Any] = Field(..., description="Algebra JSON: dim, basis, brackets")


class CohomologyRequest(AlgebraRequest):
    metric: Optional[Dict[str, Any]] = Field(default=None, description="Optional metric {'g': [[...]]}")


class CurvatureRequest(AlgebraRequest):
    metric: Dict[str, Any] = Field(..., description="Metric {'g': [[...]]}")


class VerifyRequest(AlgebraRequest):
    structure: Dict[str, Any] = Field(..., description="Structure JSON: J, xi, alpha, g (or J, g for Kähler)")
    kind: StructureKind = Field(default=StructureKind.COSYMPLECTIC, description="Verifier to run")


class StructureRequest(AlgebraRequest):
    structure: Dict[str, Any] = Field(..., description="Structure JSON: J, xi, alpha, g")


class ReportRequest(AlgebraRequest):
    structure: Optional[Dict[str, Any]] = Field(default=None, description="Optional structure JSON")
    metric: Optional[Dict[str, Any]] = Field(default=None, description="Optional metric JSON")


# ============== Response Models ==============

class StageInfo(BaseModel):
    name: str
    verdict: str
    witness: Optional[Dict[str, Any]] = None
    detail: Optional[str] = None


class ReportResponse(BaseModel):
    """Machine rendering of a staged report."""
    subject: str
    verdict: str
    failed_stage: Optional[str] = None
    stages: List[StageInfo]
    data: Dict[str, Any] = Field(default_factory=dict)
    notes: List[str] = Field(default_factory=list)


class ClassifyResponse(BaseModel):
    abelian: bool
    nilpotent: bool
    solvable: bool
    unimodular: bool
    completely_solvable: str
    derived_series: List[int]
    lower_central_series: List[int]


class DossierResponse(BaseModel):
    dossier: Dict[str, Any]
    markdown: str


class CatalogueListResponse(BaseModel):
    names: List[str]


class CatalogueEntryResponse(BaseModel):
    """Entry payloads in the same schemas the loaders accept."""
    name: str
    dim: int
    algebra: Dict[str, Any]
    structure: Optional[Dict[str, Any]] = None
    expected: Dict[str, Any]
    notes: List[str] = Field(default_factory=list)


class HealthResponse(BaseModel):
    status: str
    version: str
