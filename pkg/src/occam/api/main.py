"""FastAPI application for Occam.

This module defines the REST API endpoints for model selection on a
posted graph and for the independent-edge selection bound.
"""

from typing import Any

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from occam import __version__
from occam.core.evidence.er_ie import ie_selection_conditions
from occam.core.exceptions import DomainError, SelectionError
from occam.core.logging import get_logger
from occam.core.selection.registry import default_registry
from occam.core.selection.service import ModelSelectionService
from occam.graphs.models import Graph, possible_edges

logger = get_logger("occam.api")

app = FastAPI(
    title="Occam API",
    description="Bayesian evidence model selection for random graphs",
    version=__version__,
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


class SelectRequest(BaseModel):
    """A graph to score, with 1-based undirected edges."""

    n_v: int = Field(..., ge=1, description="Vertex count")
    edges: list[tuple[int, int]] = Field(default_factory=list)
    loops_allowed: bool = True
    k_values: list[int] = Field(default=[2], min_length=1)


class SelectResponse(BaseModel):
    """Winner and per-candidate reports."""

    winner: str
    reports: list[dict[str, Any]]


class BoundResponse(BaseModel):
    """IE selection lower bound and the regime it assumes."""

    n_v: int
    n: int
    eps: float
    delta: float
    lower_bound: float
    min_edge_probability: float
    max_edge_probability: float
    edge_sum_low: float
    edge_sum_high: float


@app.get("/")
async def root() -> dict:
    """Root endpoint returning API information."""
    return {
        "name": "Occam API",
        "version": __version__,
        "status": "running",
    }


@app.get("/health")
async def health() -> dict:
    """Health check endpoint."""
    return {"status": "healthy"}


@app.post("/api/v1/select", response_model=SelectResponse)
def select(request: SelectRequest) -> SelectResponse:
    """Select the model with the largest evidence for a graph.

    Candidates are ER, one estimated-membership blockmodel per K in
    ``k_values`` and IE, each under its matched prior.
    """
    if any(k < 1 for k in request.k_values):
        raise HTTPException(status_code=400, detail="k_values must be positive")
    try:
        g = Graph.from_edges(
            request.n_v,
            [(i - 1, j - 1) for i, j in request.edges],
            loops_allowed=request.loops_allowed,
        )
    except ValueError as e:
        raise HTTPException(status_code=400, detail=f"Invalid graph: {e}") from e

    try:
        winner, reports = ModelSelectionService().select(
            g, default_registry(request.k_values)
        )
    except SelectionError as e:
        logger.error(f"Selection failed: {e}")
        raise HTTPException(status_code=500, detail=str(e)) from e

    return SelectResponse(
        winner=winner.label,
        reports=[report.to_json_dict() for report in reports],
    )


@app.get("/api/v1/bound", response_model=BoundResponse)
async def bound(
    n_v: int = Query(..., ge=2, description="Vertex count"),
    eps: float = Query(..., gt=0.0, description="Slack parameter"),
    delta: float = Query(..., gt=0.0, description="Concentration parameter"),
    loops_allowed: bool = Query(True, description="Count diagonal pairs"),
) -> BoundResponse:
    """Lower bound on the probability that the evidence selects IE."""
    n = possible_edges(n_v, loops_allowed)
    try:
        conditions = ie_selection_conditions(n, eps, delta)
    except DomainError as e:
        raise HTTPException(status_code=400, detail=str(e)) from e
    return BoundResponse(n_v=n_v, **conditions.model_dump())
