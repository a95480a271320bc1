"""FastAPI application exposing the pipeline."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import DataError, VerificationMismatch
from . import handlers, schemas

app = FastAPI(
    title="qphom",
    version=__version__,
    description=(
        "Persistent homology of time series: delay embedding, spectral "
        "pipeline with oracle accounting, exact classical verification."
    ),
)


@app.exception_handler(DataError)
async def _data_error(request: Request, exc: DataError):
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.exception_handler(ValueError)
async def _value_error(request: Request, exc: ValueError):
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.exception_handler(VerificationMismatch)
async def _mismatch(request: Request, exc: VerificationMismatch):
    return JSONResponse(status_code=409, content={"detail": str(exc)})


@app.get("/health", response_model=schemas.HealthResponse)
def health() -> schemas.HealthResponse:
    return schemas.HealthResponse(status="ok", version=__version__)


@app.post("/embed", response_model=schemas.EmbedResponse)
def embed(req: schemas.EmbedRequest) -> schemas.EmbedResponse:
    return handlers.run_embed(req)


@app.post("/diagram", response_model=schemas.DiagramResponse)
def diagram(req: schemas.DiagramRequest) -> schemas.DiagramResponse:
    return handlers.run_diagram(req)


@app.post("/verify", response_model=schemas.VerifyResponse)
def verify(req: schemas.VerifyRequest) -> schemas.VerifyResponse:
    return handlers.run_verify(req)


@app.post("/resources", response_model=schemas.ResourceReport)
def resources(req: schemas.ResourcesRequest) -> schemas.ResourceReport:
    return handlers.run_resources(req)
