"""Command-line front door.

Subcommands: init, validate, place, unplace, move, report, whatif,
serve. Exit codes: 0 success, 1 validation or domain error, 2 usage
error. Edits always rewrite the target file canonically, so version
control diffs stay readable. TGRID_CHUNK_LIMIT overrides the lint
limit used by report/whatif/serve.
"""

from __future__ import annotations

import argparse
import json
import os
import socket
import sys
from typing import Optional

from .catalog import default_kpis
from .engine import (
    DEFAULT_CHUNK_LIMIT,
    Mutation,
    Recommendation,
    apply_mutation,
    assess,
    what_if,
)
from .grid import (
    BandSpec,
    CompetenceBand,
    DEFAULT_BANDS,
    Entity,
    GridError,
    InvalidGridError,
    InvestmentGrid,
    Kpi,
    new_grid,
    slugify,
    validate,
)
from .persistence import (
    DocumentError,
    export_report_csv,
    export_report_markdown,
    load_grid,
    report_to_dict,
    save_grid,
)


class CliError(Exception):
    """Domain failure; maps to exit code 1."""


def _chunk_limit() -> int:
    raw = os.environ.get("TGRID_CHUNK_LIMIT")
    if raw is None:
        return DEFAULT_CHUNK_LIMIT
    try:
        limit = int(raw)
    except ValueError:
        raise CliError(f"TGRID_CHUNK_LIMIT must be an integer, got {raw!r}")
    if limit < 1:
        raise CliError("TGRID_CHUNK_LIMIT must be >= 1")
    return limit


def _read_file(path: str) -> bytes:
    try:
        with open(path, "rb") as handle:
            return handle.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}")


def _load(path: str) -> InvestmentGrid:
    try:
        return load_grid(_read_file(path))
    except DocumentError as exc:
        raise CliError(f"{exc.code}: {exc}")


def _write(path: str, grid: InvestmentGrid) -> None:
    try:
        data = save_grid(grid)
    except InvalidGridError as exc:
        raise CliError(f"INVALID: {exc}")
    try:
        with open(path, "wb") as handle:
            handle.write(data)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}")


def _parse_band(value: str) -> CompetenceBand:
    try:
        return CompetenceBand(value)
    except ValueError:
        raise CliError(
            f"band must be one of {[b.value for b in CompetenceBand]}, got {value!r}"
        )


def _parse_bands_flag(value: str) -> BandSpec:
    parts = value.split(",")
    if len(parts) != 3:
        raise CliError("--bands takes three comma-separated integers: advanced,intermediate,novice")
    try:
        a, i, n = (int(p) for p in parts)
    except ValueError:
        raise CliError(f"--bands values must be integers, got {value!r}")
    if min(a, i, n) < 1:
        raise CliError("--bands capacities must each be >= 1")
    return BandSpec(advanced_capacity=a, intermediate_capacity=i, novice_capacity=n)


def _load_kpis_file(path: str) -> list[Kpi]:
    try:
        records = json.loads(_read_file(path).decode("utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise CliError(f"cannot parse {path}: {exc}")
    if not isinstance(records, list) or not records:
        raise CliError(f"{path}: expected a non-empty JSON array of KPIs")
    kpis = []
    for index, record in enumerate(records):
        if isinstance(record, str):
            record = {"name": record}
        if not isinstance(record, dict) or "name" not in record:
            raise CliError(f"{path}: KPI {index} must be a name or an object with a name")
        name = record["name"]
        kpis.append(Kpi(id=record.get("id") or slugify(name), name=name, position=index))
    return kpis


def _load_entities_file(path: str) -> list[Entity]:
    try:
        records = json.loads(_read_file(path).decode("utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise CliError(f"cannot parse {path}: {exc}")
    if not isinstance(records, list) or not records:
        raise CliError(f"{path}: expected a non-empty JSON array of entities")
    entities = []
    for index, record in enumerate(records):
        if isinstance(record, str):
            record = {"name": record}
        if not isinstance(record, dict) or "name" not in record:
            raise CliError(f"{path}: entity {index} must be a name or an object with a name")
        name = record["name"]
        entities.append(
            Entity(
                id=record.get("id") or slugify(name),
                name=name,
                subject=bool(record.get("subject", False)),
            )
        )
    return entities


DEFAULT_ENTITIES = [Entity(id="my-company", name="My Company", subject=True)]


def run_init(args: argparse.Namespace) -> int:
    if args.kpis == "default":
        kpis = default_kpis()
    else:
        kpis = _load_kpis_file(args.kpis)
    entities = _load_entities_file(args.entities) if args.entities else list(DEFAULT_ENTITIES)
    bands = _parse_bands_flag(args.bands) if args.bands else DEFAULT_BANDS
    try:
        grid = new_grid(kpis, entities, bands=bands)
    except (GridError, ValueError) as exc:
        raise CliError(str(exc))
    _write(args.path, grid)
    print(f"wrote {args.path} (revision {grid.revision})")
    return 0


def run_validate(args: argparse.Namespace) -> int:
    try:
        grid = load_grid(_read_file(args.path))
    except DocumentError as exc:
        if exc.code == "INVALID":
            for violation in exc.violations:
                print(f"{violation.code.value}: {violation.message}")
            return 1
        raise CliError(f"{exc.code}: {exc}")
    problems = validate(grid)
    if problems:
        for violation in problems:
            print(f"{violation.code.value}: {violation.message}")
        return 1
    print("valid")
    return 0


def _mutate_file(path: str, mutation: Mutation) -> int:
    grid = _load(path)
    try:
        grid = apply_mutation(grid, mutation)
    except GridError as exc:
        raise CliError(f"{exc.code.value}: {exc}")
    except ValueError as exc:
        raise CliError(str(exc))
    _write(path, grid)
    print(f"revision {grid.revision}")
    return 0


def run_place(args: argparse.Namespace) -> int:
    return _mutate_file(
        args.path,
        Mutation(
            op="place",
            kpi_id=args.kpi,
            entity_id=args.entity,
            band=_parse_band(args.band),
            row=args.row,
        ),
    )


def run_unplace(args: argparse.Namespace) -> int:
    return _mutate_file(
        args.path, Mutation(op="unplace", kpi_id=args.kpi, entity_id=args.entity)
    )


def run_move(args: argparse.Namespace) -> int:
    return _mutate_file(
        args.path,
        Mutation(
            op="move",
            kpi_id=args.kpi,
            entity_id=args.entity,
            band=_parse_band(args.band),
            row=args.row,
        ),
    )


def run_report(args: argparse.Namespace) -> int:
    grid = _load(args.path)
    try:
        report = assess(grid, chunk_limit=_chunk_limit())
    except InvalidGridError as exc:
        raise CliError(f"INVALID: {exc}")
    if args.format == "md":
        sys.stdout.write(export_report_markdown(report, grid))
    elif args.format == "csv":
        sys.stdout.write(export_report_csv(report, grid))
    else:
        print(json.dumps(report_to_dict(report, grid), indent=2, ensure_ascii=False))
    return 0


def _format_delta_value(value: object) -> str:
    if isinstance(value, Recommendation):
        guidance = value.guidance or "(no guidance)"
        return f"[{value.action.value}] {guidance}"
    if hasattr(value, "value"):
        return str(value.value)
    return str(value)


def run_whatif(args: argparse.Namespace) -> int:
    grid = _load(args.path)
    band = _parse_band(args.band) if args.band is not None else None
    mutation = Mutation(
        op=args.op, kpi_id=args.kpi, entity_id=args.entity, band=band, row=args.row
    )
    try:
        result = what_if(grid, mutation, chunk_limit=_chunk_limit())
    except GridError as exc:
        raise CliError(f"{exc.code.value}: {exc}")
    except (InvalidGridError, ValueError) as exc:
        raise CliError(str(exc))
    if not result.deltas:
        print("no changes")
        return 0
    current_kpi: Optional[str] = None
    for delta in result.deltas:
        if delta.kpi_id != current_kpi:
            print(f"{delta.kpi_id}:")
            current_kpi = delta.kpi_id
        before = _format_delta_value(delta.before)
        after = _format_delta_value(delta.after)
        print(f"  {delta.field}: {before} -> {after}")
    return 0


def run_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    if args.ui_dir is not None and not os.path.isdir(args.ui_dir):
        raise CliError(f"--ui-dir {args.ui_dir} is not a directory")
    app = create_app(chunk_limit=_chunk_limit(), ui_dir=args.ui_dir)
    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        sock.bind((args.host, args.port))
    except OSError as exc:
        sock.close()
        raise CliError(f"cannot bind {args.host}:{args.port}: {exc}")
    config = uvicorn.Config(app, log_level="warning")
    server = uvicorn.Server(config)
    try:
        server.run(sockets=[sock])
    finally:
        sock.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tgrid",
        description="Competitor-placement grids with investment recommendations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_init = sub.add_parser("init", help="create a new grid document")
    p_init.add_argument("path")
    p_init.add_argument(
        "--kpis",
        default="default",
        help="'default' for the built-in 8-KPI catalog, or a JSON file of KPIs",
    )
    p_init.add_argument("--entities", help="JSON file of entities (default: one subject)")
    p_init.add_argument("--bands", help="advanced,intermediate,novice capacities (default 6,2,3)")
    p_init.set_defaults(func=run_init)

    p_validate = sub.add_parser("validate", help="check a grid document")
    p_validate.add_argument("path")
    p_validate.set_defaults(func=run_validate)

    for name, func, needs_cell in (
        ("place", run_place, True),
        ("unplace", run_unplace, False),
        ("move", run_move, True),
    ):
        p_cmd = sub.add_parser(name, help=f"{name} an entity and rewrite the file")
        p_cmd.add_argument("path")
        p_cmd.add_argument("kpi")
        p_cmd.add_argument("entity")
        if needs_cell:
            p_cmd.add_argument("band")
            p_cmd.add_argument("row", type=int)
        p_cmd.set_defaults(func=func)

    p_report = sub.add_parser("report", help="print the differentiation report")
    p_report.add_argument("path")
    p_report.add_argument("--format", choices=("md", "csv", "json"), default="md")
    p_report.set_defaults(func=run_report)

    p_whatif = sub.add_parser("whatif", help="preview a mutation without saving")
    p_whatif.add_argument("path")
    p_whatif.add_argument("op", choices=("place", "unplace", "move"))
    p_whatif.add_argument("kpi")
    p_whatif.add_argument("entity")
    p_whatif.add_argument("band", nargs="?")
    p_whatif.add_argument("row", nargs="?", type=int)
    p_whatif.set_defaults(func=run_whatif)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8321)
    p_serve.add_argument("--ui-dir", help="serve a built static UI from this directory at /")
    p_serve.set_defaults(func=run_serve)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "whatif" and args.op in ("place", "move"):
        if args.band is None or args.row is None:
            parser.error(f"whatif {args.op} requires band and row")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
