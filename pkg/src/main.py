"""FastAPI application exposing the verifiers over HTTP."""

import logging

import uvicorn
from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from .api.routes import router
from .api.schemas import HealthResponse
from .config import configure_logging, settings

logger = logging.getLogger(__name__)

VERSION = "1.0.0"

app = FastAPI(
    title="Cosymplectic Lab",
    description="""
    Exact verification of cosymplectic and Kähler structures on Lie algebras.

    Features:
    - Jacobi validation and structural classification
    - Chevalley-Eilenberg cohomology, Hodge decomposition, Betti screening
    - Cosymplectic, normal and Kähler verification with witnesses
    - Levi-Civita curvature
    - Leafwise Kähler identities
    - Full verification dossiers and the built-in catalogue
    """,
    version=VERSION,
    docs_url="/docs",
    redoc_url="/redoc",
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(router, prefix="/api", tags=["Cosymplectic Lab API"])


@app.on_event("startup")
async def startup_event():
    configure_logging()
    logger.info("cosymplectic lab API ready")


@app.get("/health", response_model=HealthResponse)
async def health_check():
    return HealthResponse(status="healthy", version=VERSION)


@app.get("/api")
async def api_root():
    """API root endpoint."""
    return {
        "name": "Cosymplectic Lab",
        "version": VERSION,
        "endpoints": {
            "validate": "/api/validate",
            "classify": "/api/classify",
            "cohomology": "/api/cohomology",
            "verify": "/api/verify",
            "curvature": "/api/curvature",
            "kahler_identities": "/api/kahler-identities",
            "report": "/api/report",
            "catalogue": "/api/catalogue",
        },
    }


def main():
    """Run the application."""
    uvicorn.run(
        "src.main:app",
        host=settings.api_host,
        port=settings.api_port,
        reload=settings.debug,
    )


if __name__ == "__main__":
    main()
