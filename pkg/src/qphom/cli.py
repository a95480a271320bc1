"""Command-line client for the pipeline.

Subcommands: ``embed`` (delay-embed a CSV into a point-cloud CSV),
``diagram`` (full pipeline to diagram JSON, optional SVG and Betti-table
JSON), ``verify`` (spectral vs classical tables, exit 1 on any mismatch),
``resources`` (oracle-call accounting) and ``serve`` (run the HTTP service).

The analysis commands build the same request models the HTTP endpoints use
and either call the handlers in process or, with ``--server URL``, send them
to a running service.  Exit codes: 0 success, 1 verification mismatch,
2 usage error, 3 data error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .dirac import CONSTRUCTIONS, DEFAULT_CONSTRUCTION
from .errors import DataError, VerificationMismatch
from .ingest import load_csv, validate
from .persistence import ScaleGrid
from .profiles import periodic_series
from .service import handlers, schemas

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_DATA = 3


class _UsageError(Exception):
    """Flag-level problem; reported through the parser with exit code 2."""

PROFILE_DEFAULTS = {
    "periodic": {"dim": 2, "tau": 1, "scales": "0:2.4:0.1", "dims": "0,1", "xi": 1},
    "eeg": {"dim": 2, "tau": 8, "scales": "0:15:1", "dims": "0,1", "xi": 1},
}

_CONFIG_KEYS = {
    "input", "column", "profile", "dim", "tau", "scales", "dims", "xi",
    "mode", "construction", "threads", "seed", "delta", "oracle_noise",
    "output", "svg", "tables", "report", "server",
}


def _add_io_args(p: argparse.ArgumentParser, with_profile: bool = True):
    p.add_argument("--input", help="CSV file with the time series")
    p.add_argument("--column", help="value column: 0-based index or header name")
    if with_profile:
        p.add_argument(
            "--profile", choices=sorted(PROFILE_DEFAULTS),
            help="demo profile: 'periodic' regenerates the built-in sine "
                 "samples, 'eeg' applies tau=8, dim=2, scales 0:15:1 to "
                 "--input data",
        )
    p.add_argument("--config", help="flat key=value file with defaults for these flags")
    p.add_argument("--server", help="base URL of a running service; run remotely")


def _add_analysis_args(p: argparse.ArgumentParser):
    p.add_argument("--dim", type=int, default=None, help="embedding dimension (default 2)")
    p.add_argument("--tau", type=int, default=None, help="embedding delay in samples (default 1)")
    p.add_argument("--scales", default=None,
                   help="scale grid: start:stop:step (inclusive) or a comma list")
    p.add_argument("--dims", default=None, help="homology dimensions, comma list (default 0,1)")
    p.add_argument("--xi", type=int, default=None, help="operator mass parameter (default 1)")
    p.add_argument("--construction", choices=CONSTRUCTIONS, default=DEFAULT_CONSTRUCTION,
                   help=f"cross-scale block construction (default {DEFAULT_CONSTRUCTION})")
    p.add_argument("--threads", type=int, default=0,
                   help="eigensolve workers; 1 forces sequential (default: auto)")
    p.add_argument("--seed", type=int, default=7, help="seed for randomized options")
    p.add_argument("--delta", type=float, default=1.0,
                   help="modeled comparator accuracy for the cost estimates")
    p.add_argument("--oracle-noise", type=float, default=0.0, dest="oracle_noise",
                   help="uniform perturbation amplitude for robustness runs (default off)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qphom",
        description="Persistent homology of time series with a spectral "
                    "pipeline and classical verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_embed = sub.add_parser("embed", help="delay-embed a series into a point-cloud CSV")
    _add_io_args(p_embed)
    p_embed.add_argument("--dim", type=int, default=None)
    p_embed.add_argument("--tau", type=int, default=None)
    p_embed.add_argument("--output", required=True, help="point-cloud CSV to write")

    p_diag = sub.add_parser("diagram", help="compute Betti tables and a persistence diagram")
    _add_io_args(p_diag)
    _add_analysis_args(p_diag)
    p_diag.add_argument("--mode", choices=("quantum-sim", "classical", "both"),
                        default="quantum-sim")
    p_diag.add_argument("--output", required=True, help="diagram JSON to write")
    p_diag.add_argument("--svg", help="also render the diagram to this SVG file")
    p_diag.add_argument("--tables", help="also write the Betti tables to this JSON file")

    p_ver = sub.add_parser("verify", help="compare spectral and classical tables; exit 1 on mismatch")
    _add_io_args(p_ver)
    _add_analysis_args(p_ver)
    p_ver.add_argument("--mode", default=None,
                       help=argparse.SUPPRESS)  # verify always runs both; flag rejected
    p_ver.add_argument("--report", help="write the discrepancy report to this file")
    p_ver.add_argument("--inject-fault", dest="inject_fault",
                       help="self-test hook: flip quantum cell 'k,i,j' before comparing")

    p_res = sub.add_parser("resources", help="report oracle-call counts for a run")
    _add_io_args(p_res)
    _add_analysis_args(p_res)
    p_res.add_argument("--json", action="store_true", help="machine-readable output")

    p_srv = sub.add_parser("serve", help="run the HTTP service")
    p_srv.add_argument("--host", default="127.0.0.1")
    p_srv.add_argument("--port", type=int, default=8000)

    return parser


def _load_config(path: str) -> dict[str, str]:
    cfg: dict[str, str] = {}
    p = Path(path)
    if not p.is_file():
        raise DataError(f"no such config file: {path}")
    for line_no, raw in enumerate(p.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise DataError(f"config line {line_no}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip().replace("-", "_")
        if key not in _CONFIG_KEYS:
            raise DataError(f"config line {line_no}: unknown key {key!r}")
        cfg[key] = value.strip()
    return cfg


def _apply_config(args: argparse.Namespace, argv: list[str]):
    """Config values fill flags the command line did not set explicitly."""
    cfg = _load_config(args.config)
    given = {
        a.split("=", 1)[0].lstrip("-").replace("-", "_")
        for a in argv
        if a.startswith("--")
    }
    coerce = {"dim": int, "tau": int, "xi": int, "threads": int, "seed": int,
              "delta": float, "oracle_noise": float}
    for key, value in cfg.items():
        if key in given or not hasattr(args, key):
            continue
        try:
            setattr(args, key, coerce.get(key, str)(value))
        except ValueError as exc:
            raise DataError(f"config key {key}: {exc}") from exc


def _resolve_column(raw: str | None) -> int | str | None:
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        return raw


def _series_values(args) -> list[float]:
    profile = getattr(args, "profile", None)
    if profile == "periodic" and not args.input:
        return [float(v) for v in periodic_series().values]
    if not args.input:
        raise _UsageError("no input: pass --input FILE (or --profile periodic)")
    ts = load_csv(args.input, _resolve_column(args.column))
    report = validate(ts)
    if not report.ok:
        raise DataError(f"invalid series in {args.input}: {report}")
    return [float(v) for v in ts.values]


def _effective(args, key: str):
    value = getattr(args, key, None)
    if value is not None:
        return value
    profile = getattr(args, "profile", None)
    if profile and key in PROFILE_DEFAULTS[profile]:
        return PROFILE_DEFAULTS[profile][key]
    return {"dim": 2, "tau": 1, "scales": None, "dims": "0,1", "xi": 1}[key]


def _parse_dims(text) -> list[int]:
    if isinstance(text, list):
        return text
    try:
        dims = [int(p) for p in str(text).split(",") if p.strip() != ""]
    except ValueError as exc:
        raise _UsageError(f"bad --dims value {text!r}: {exc}") from exc
    if not dims:
        raise _UsageError("empty --dims list")
    return dims


def _analysis_payload(args) -> dict:
    scales_text = _effective(args, "scales")
    if scales_text is None:
        raise _UsageError("no scale grid: pass --scales (e.g. 0:2.4:0.1)")
    try:
        grid = ScaleGrid.parse(str(scales_text))
    except ValueError as exc:
        raise _UsageError(f"bad --scales value {scales_text!r}: {exc}") from exc
    threads = args.threads if args.threads and args.threads > 0 else 4
    return {
        "values": _series_values(args),
        "dim": int(_effective(args, "dim")),
        "tau": int(_effective(args, "tau")),
        "scales": list(grid),
        "dims": _parse_dims(_effective(args, "dims")),
        "xi": int(_effective(args, "xi")),
        "construction": args.construction,
        "threads": threads,
        "oracle_noise": args.oracle_noise,
        "seed": args.seed,
        "delta": args.delta,
    }


def _dispatch(args, endpoint: str, request_model, local_fn, response_model):
    """Run a request locally or POST it to --server."""
    if getattr(args, "server", None):
        import httpx

        url = args.server.rstrip("/") + endpoint
        resp = httpx.post(url, json=request_model.model_dump(), timeout=600.0)
        if resp.status_code != 200:
            detail = resp.json().get("detail", resp.text) if resp.content else resp.text
            raise DataError(f"server returned {resp.status_code}: {detail}")
        return response_model.model_validate(resp.json())
    return local_fn(request_model)


def _write_text(path: str, text: str):
    Path(path).write_text(text, encoding="utf-8")


def _cmd_embed(args) -> int:
    req = schemas.EmbedRequest(
        values=_series_values(args),
        dim=int(_effective(args, "dim")),
        tau=int(_effective(args, "tau")),
    )
    resp = _dispatch(args, "/embed", req, handlers.run_embed, schemas.EmbedResponse)
    with open(args.output, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        for row in resp.points:
            writer.writerow([format(v, ".17g") for v in row])
    print(f"wrote {resp.count} points of dimension {resp.dim} to {args.output}")
    return EXIT_OK


def _points_json(points: list[schemas.DiagramPointModel]) -> str:
    records = [p.model_dump() for p in points]
    return json.dumps(records, indent=2) + "\n"


def _cmd_diagram(args) -> int:
    req = schemas.DiagramRequest(
        **_analysis_payload(args),
        mode=args.mode,
        include_svg=bool(args.svg),
        include_tables=True,
    )
    resp = _dispatch(args, "/diagram", req, handlers.run_diagram, schemas.DiagramResponse)
    _write_text(args.output, _points_json(resp.points))
    if args.svg:
        _write_text(args.svg, (resp.svg or "") + "\n")
    if args.tables:
        _write_text(args.tables, json.dumps([t.model_dump() for t in resp.tables], indent=2) + "\n")
    print(f"wrote {len(resp.points)} diagram point(s) to {args.output}")
    return EXIT_OK


def _parse_fault(raw: str | None):
    if raw is None:
        return None
    parts = raw.split(",")
    if len(parts) != 3:
        raise _UsageError(f"--inject-fault wants 'k,i,j', got {raw!r}")
    try:
        return tuple(int(p) for p in parts)
    except ValueError as exc:
        raise _UsageError(f"bad --inject-fault value {raw!r}: {exc}") from exc


def _cmd_verify(args, parser) -> int:
    if args.mode is not None and args.mode != "both":
        parser.error("verify always runs both modes; drop --mode")
    req = schemas.VerifyRequest(
        **_analysis_payload(args),
        inject_fault=_parse_fault(args.inject_fault),
    )
    resp = _dispatch(args, "/verify", req, handlers.run_verify, schemas.VerifyResponse)
    lines = [
        f"k={d.k} ({d.i},{d.j}): quantum={d.quantum} classical={d.classical}"
        for d in resp.discrepancies
    ]
    report = "\n".join(lines)
    if args.report:
        _write_text(args.report, report + ("\n" if report else ""))
    if resp.match:
        print(f"tables agree for dimensions {resp.dims}")
        return EXIT_OK
    print(report, file=sys.stderr)
    print(f"{len(resp.discrepancies)} cell(s) disagree", file=sys.stderr)
    return EXIT_MISMATCH


def _cmd_resources(args) -> int:
    req = schemas.ResourcesRequest(**_analysis_payload(args))
    resp = _dispatch(args, "/resources", req, handlers.run_resources, schemas.ResourceReport)
    if args.json:
        print(json.dumps(resp.model_dump(), indent=2))
        return EXIT_OK
    print(f"qram reads:          {resp.qram_reads}")
    print(f"comparator calls:    {resp.comparator_calls}")
    print(f"membership queries:  {resp.membership_calls}")
    print(f"worst-case calls:    {resp.worst_case_comparator_calls}")
    print(f"delta:               {resp.delta}")
    print(f"est. device reads:   {resp.estimated_qram_cost}")
    print(f"est. gate count:     {resp.estimated_gate_cost}")
    for k, usage in sorted(resp.per_dimension.items()):
        print(
            f"  k={k}: {usage.queries} queries, max {usage.max_calls_per_query} "
            f"comparator calls/query (bound {usage.bound_per_query})"
        )
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("qphom.service.app:app", host=args.host, port=args.port)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "config", None):
            _apply_config(args, argv)
        if args.command == "embed":
            return _cmd_embed(args)
        if args.command == "diagram":
            return _cmd_diagram(args)
        if args.command == "verify":
            return _cmd_verify(args, parser)
        if args.command == "resources":
            return _cmd_resources(args)
        if args.command == "serve":
            return _cmd_serve(args)
        parser.error(f"unknown command {args.command!r}")
    except _UsageError as exc:
        parser.error(str(exc))  # prints usage and exits 2
    except VerificationMismatch as exc:
        print(f"verification mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
