"""Request/response models shared by the HTTP endpoints and the CLI client."""

from __future__ import annotations

from typing import Literal, Optional, Union

from pydantic import BaseModel, Field

from ..dirac import DEFAULT_CONSTRUCTION

Mode = Literal["quantum-sim", "classical", "both"]
Construction = Literal["as-written", "restricted"]


class EmbedRequest(BaseModel):
    values: list[float] = Field(min_length=1)
    dim: int = Field(default=2, ge=1)
    tau: int = Field(default=1, ge=1)


class EmbedResponse(BaseModel):
    points: list[list[float]]
    count: int
    dim: int
    tau: int


class AnalysisRequest(BaseModel):
    """Common knobs for every pipeline-running endpoint."""

    values: list[float] = Field(min_length=1)
    dim: int = Field(default=2, ge=1)
    tau: int = Field(default=1, ge=1)
    scales: list[float] = Field(min_length=1)
    dims: list[int] = Field(default_factory=lambda: [0, 1], min_length=1)
    xi: int = 1
    construction: Construction = DEFAULT_CONSTRUCTION
    threads: int = Field(default=1, ge=1)
    oracle_noise: float = Field(default=0.0, ge=0.0)
    seed: int = 7
    delta: float = Field(default=1.0, gt=0.0)


class DiagramRequest(AnalysisRequest):
    mode: Mode = "quantum-sim"
    include_svg: bool = False
    include_tables: bool = True


class VerifyRequest(AnalysisRequest):
    # self-test hook: flips the named quantum cell so the mismatch path can
    # be exercised end to end
    inject_fault: Optional[tuple[int, int, int]] = None  # (k, i, j)


class ResourcesRequest(AnalysisRequest):
    pass


class BettiTableModel(BaseModel):
    k: int
    grid: list[float]
    rows: list[list[Optional[int]]]


class DiagramPointModel(BaseModel):
    dimension: int
    birth: float
    death: Union[float, Literal["inf"]]
    multiplicity: int


class DimensionUsage(BaseModel):
    queries: int
    comparator_calls: int
    max_calls_per_query: int
    bound_per_query: int


class ResourceReport(BaseModel):
    qram_reads: int
    comparator_calls: int
    membership_calls: int
    worst_case_comparator_calls: int
    delta: float
    estimated_qram_cost: int
    estimated_gate_cost: int
    per_dimension: dict[int, DimensionUsage]


class DiagramResponse(BaseModel):
    points: list[DiagramPointModel]
    tables: list[BettiTableModel]
    resources: ResourceReport
    svg: Optional[str] = None


class DiscrepancyModel(BaseModel):
    k: int
    i: int
    j: int
    quantum: int
    classical: int


class VerifyResponse(BaseModel):
    match: bool
    dims: list[int]
    discrepancies: list[DiscrepancyModel]


class HealthResponse(BaseModel):
    status: str
    version: str
