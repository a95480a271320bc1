"""Pipeline orchestration behind the endpoints; the CLI calls these directly
when no remote server is configured."""

from __future__ import annotations

import math

import numpy as np

from .. import classical as classical_mod
from .. import persistence as pers
from ..embedding import EmbeddingParams, delay_embed
from ..errors import DataError, VerificationMismatch
from ..ingest import TimeSeries, validate
from ..oracles import OracleStats, QramModel
from . import schemas


def _series(values: list[float]) -> TimeSeries:
    ts = TimeSeries(np.asarray(values, dtype=float))
    report = validate(ts)
    if not report.ok:
        raise DataError(f"invalid series: {report}")
    return ts


def _grid(scales: list[float]) -> pers.ScaleGrid:
    try:
        return pers.ScaleGrid(tuple(scales))
    except ValueError as exc:
        raise DataError(str(exc)) from exc


def _params(req) -> EmbeddingParams:
    return EmbeddingParams(req.dim, req.tau)


def _oracle(req, ts: TimeSeries) -> QramModel:
    return QramModel(
        ts,
        delta=req.delta,
        noise=req.oracle_noise,
        rng=np.random.default_rng(req.seed),
    )


def _check_dims(dims: list[int]) -> list[int]:
    if any(k < 0 for k in dims):
        raise DataError(f"homology dimensions must be >= 0, got {dims}")
    return sorted(set(dims))


def _stats_model(stats: OracleStats) -> schemas.ResourceReport:
    return schemas.ResourceReport(
        qram_reads=stats.qram_reads,
        comparator_calls=stats.comparator_calls,
        membership_calls=stats.membership_calls,
        worst_case_comparator_calls=stats.worst_case_comparator_calls,
        delta=stats.delta,
        estimated_qram_cost=stats.estimated_qram_cost,
        estimated_gate_cost=stats.estimated_gate_cost,
        per_dimension={
            k: schemas.DimensionUsage(
                queries=s.queries,
                comparator_calls=s.comparator_calls,
                max_calls_per_query=s.max_calls_per_query,
                bound_per_query=s.bound_per_query,
            )
            for k, s in stats.per_dimension.items()
        },
    )


def _table_model(table: pers.BettiTable) -> schemas.BettiTableModel:
    return schemas.BettiTableModel(k=table.k, grid=list(table.grid), rows=table.rows_json())


def _point_models(points) -> list[schemas.DiagramPointModel]:
    return [
        schemas.DiagramPointModel(
            dimension=p.dimension,
            birth=p.birth,
            death="inf" if math.isinf(p.death) else p.death,
            multiplicity=p.multiplicity,
        )
        for p in points
    ]


def _quantum_tables(req, oracle, grid, dims) -> dict[int, pers.BettiTable]:
    kmax = max(dims) + 1
    complexes = pers.build_grid_complexes(oracle, _params(req), grid, kmax)
    return {
        k: pers.betti_table_from_complexes(
            complexes, grid, k, req.xi, req.construction, req.threads
        )
        for k in dims
    }


def _classical_tables(req, ts, grid, dims) -> dict[int, pers.BettiTable]:
    cloud = delay_embed(ts, _params(req))
    kmax = max(dims)
    pairs = classical_mod.classical_persistence(cloud, kmax, max_scale=grid[len(grid) - 1])
    return {k: pers.betti_table_from_pairs(pairs, grid, k) for k in dims}


def run_embed(req: schemas.EmbedRequest) -> schemas.EmbedResponse:
    ts = _series(req.values)
    cloud = delay_embed(ts, EmbeddingParams(req.dim, req.tau))
    return schemas.EmbedResponse(
        points=[[float(v) for v in row] for row in cloud.points],
        count=cloud.n,
        dim=req.dim,
        tau=req.tau,
    )


def run_diagram(req: schemas.DiagramRequest) -> schemas.DiagramResponse:
    ts = _series(req.values)
    grid = _grid(req.scales)
    dims = _check_dims(req.dims)
    oracle = _oracle(req, ts)

    quantum = classical = None
    if req.mode in ("quantum-sim", "both"):
        quantum = _quantum_tables(req, oracle, grid, dims)
    if req.mode in ("classical", "both"):
        classical = _classical_tables(req, ts, grid, dims)
    if req.mode == "both":
        bad = [
            (k, d.i, d.j, d.left, d.right)
            for k in dims
            for d in classical_mod.compare(quantum[k], classical[k])
        ]
        if bad:
            raise VerificationMismatch(
                f"{len(bad)} table cell(s) disagree, first at "
                f"k={bad[0][0]} ({bad[0][1]}, {bad[0][2]}): "
                f"quantum={bad[0][3]} classical={bad[0][4]}"
            )
    tables = quantum if quantum is not None else classical
    points = pers.merge_diagrams([pers.diagram_from_table(tables[k]) for k in dims])
    return schemas.DiagramResponse(
        points=_point_models(points),
        tables=[_table_model(tables[k]) for k in dims] if req.include_tables else [],
        resources=_stats_model(oracle.call_report()),
        svg=pers.diagram_to_svg(points, axis_max=grid[len(grid) - 1]) if req.include_svg else None,
    )


def run_verify(req: schemas.VerifyRequest) -> schemas.VerifyResponse:
    ts = _series(req.values)
    grid = _grid(req.scales)
    dims = _check_dims(req.dims)
    oracle = _oracle(req, ts)

    quantum = _quantum_tables(req, oracle, grid, dims)
    classical = _classical_tables(req, ts, grid, dims)

    if req.inject_fault is not None:
        k, i, j = req.inject_fault
        if k not in quantum or not 0 <= i <= j < len(grid):
            raise DataError(f"fault cell ({k}, {i}, {j}) outside the table")
        quantum[k].set(i, j, quantum[k].value(i, j) + 1)

    discrepancies = [
        schemas.DiscrepancyModel(k=k, i=d.i, j=d.j, quantum=d.left, classical=d.right)
        for k in dims
        for d in classical_mod.compare(quantum[k], classical[k])
    ]
    return schemas.VerifyResponse(
        match=not discrepancies, dims=dims, discrepancies=discrepancies
    )


def run_resources(req: schemas.ResourcesRequest) -> schemas.ResourceReport:
    """Oracle-call accounting for building every complex the grid needs;
    the spectral stage reads no further data."""
    ts = _series(req.values)
    grid = _grid(req.scales)
    dims = _check_dims(req.dims)
    oracle = _oracle(req, ts)
    pers.build_grid_complexes(oracle, _params(req), grid, max(dims) + 1)
    return _stats_model(oracle.call_report())
