"""HTTP session service over investment grids.

Sessions are in-memory: POST a grid document to open one, mutate it
through guarded endpoints, read reports and lint results back. Writes
use optimistic concurrency — each mutation names the revision it
expects, and a stale expectation is refused with 409 so concurrent
tabs cannot silently clobber each other. Grids inside sessions are
immutable values; a mutation swaps the whole grid under a per-session
lock, so readers always see a complete, valid grid.

Error bodies are always ``{"code", "message"}`` plus an optional
``"violations"`` list carrying structured grid violations.
"""

from __future__ import annotations

import json
import secrets
import threading
import time
from dataclasses import dataclass, field
from typing import Any, Optional

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse, PlainTextResponse

from .engine import (
    DEFAULT_CHUNK_LIMIT,
    Mutation,
    apply_mutation,
    assess,
    chunk_lint,
    what_if,
)
from .grid import CompetenceBand, GridError, InvestmentGrid
from .persistence import (
    DocumentError,
    load_grid,
    report_to_dict,
    save_grid,
    what_if_to_dict,
)

MUTATION_OPS = ("place", "unplace", "move")


@dataclass
class Session:
    id: str
    grid: InvestmentGrid
    created_at: float
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    """Thread-safe id → session map."""

    def __init__(self) -> None:
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, grid: InvestmentGrid) -> Session:
        session = Session(id=secrets.token_urlsafe(16), grid=grid, created_at=time.time())
        with self._lock:
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Optional[Session]:
        with self._lock:
            return self._sessions.get(session_id)


def _error(
    status: int, code: str, message: str, violations: Optional[list] = None
) -> JSONResponse:
    body: dict[str, Any] = {"code": code, "message": message}
    if violations:
        body["violations"] = [
            {
                "code": v.code.value,
                "message": v.message,
                "kpi": v.kpi_id,
                "entity": v.entity_id,
            }
            for v in violations
        ]
    return JSONResponse(body, status_code=status)


def _not_found(session_id: str) -> JSONResponse:
    return _error(404, "NOT_FOUND", f"no session {session_id!r}")


class MutationSchemaError(Exception):
    pass


def _parse_mutation(payload: Any, with_revision: bool) -> tuple[Mutation, Optional[int]]:
    """Decode a wire mutation; with_revision selects the committing form."""
    if not isinstance(payload, dict):
        raise MutationSchemaError("mutation body must be a JSON object")
    allowed = {"op", "kpi", "entity", "band", "row"}
    if with_revision:
        allowed.add("expected_revision")
    unknown = sorted(set(payload) - allowed)
    if unknown:
        raise MutationSchemaError(f"unknown mutation fields {unknown}")
    op = payload.get("op")
    if op not in MUTATION_OPS:
        raise MutationSchemaError(f"op must be one of {list(MUTATION_OPS)}")
    kpi = payload.get("kpi")
    entity = payload.get("entity")
    if not isinstance(kpi, str) or not kpi:
        raise MutationSchemaError("kpi must be a non-empty string")
    if not isinstance(entity, str) or not entity:
        raise MutationSchemaError("entity must be a non-empty string")

    band: Optional[CompetenceBand] = None
    row: Optional[int] = None
    if op in ("place", "move"):
        band_value = payload.get("band")
        band_values = {b.value: b for b in CompetenceBand}
        if band_value not in band_values:
            raise MutationSchemaError(f"band must be one of {sorted(band_values)}")
        band = band_values[band_value]
        row = payload.get("row")
        if not isinstance(row, int) or isinstance(row, bool) or row < 0:
            raise MutationSchemaError("row must be a non-negative integer")
    elif "band" in payload or "row" in payload:
        raise MutationSchemaError("unplace takes no band or row")

    expected_revision: Optional[int] = None
    if with_revision:
        expected_revision = payload.get("expected_revision")
        if (
            not isinstance(expected_revision, int)
            or isinstance(expected_revision, bool)
            or expected_revision < 0
        ):
            raise MutationSchemaError("expected_revision must be a non-negative integer")
    return Mutation(op=op, kpi_id=kpi, entity_id=entity, band=band, row=row), expected_revision


async def _json_body(request: Request) -> Any:
    try:
        return json.loads(await request.body())
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MutationSchemaError(f"body is not JSON: {exc}") from exc


def create_app(
    chunk_limit: int = DEFAULT_CHUNK_LIMIT, ui_dir: Optional[str] = None
) -> FastAPI:
    """Build the service; ui_dir optionally serves a built static UI at /."""
    app = FastAPI(title="tgrid", docs_url=None, redoc_url=None)
    store = SessionStore()

    @app.get("/healthz")
    def healthz() -> PlainTextResponse:
        return PlainTextResponse("ok")

    @app.post("/v1/grids", status_code=201)
    async def create_grid(request: Request) -> Response:
        body = await request.body()
        try:
            grid = load_grid(body)
        except DocumentError as exc:
            return _error(400, exc.code, str(exc), exc.violations)
        session = store.create(grid)
        return JSONResponse(
            {"id": session.id, "revision": grid.revision}, status_code=201
        )

    @app.get("/v1/grids/{session_id}")
    def get_grid(session_id: str) -> Response:
        session = store.get(session_id)
        if session is None:
            return _not_found(session_id)
        return Response(content=save_grid(session.grid), media_type="application/json")

    @app.post("/v1/grids/{session_id}/mutations")
    async def post_mutation(session_id: str, request: Request) -> Response:
        session = store.get(session_id)
        if session is None:
            return _not_found(session_id)
        try:
            mutation, expected_revision = _parse_mutation(
                await _json_body(request), with_revision=True
            )
        except MutationSchemaError as exc:
            return _error(422, "SCHEMA", str(exc))
        with session.lock:
            if expected_revision != session.grid.revision:
                return _error(
                    409,
                    "REVISION_MISMATCH",
                    f"expected_revision {expected_revision} does not match "
                    f"current revision {session.grid.revision}",
                )
            try:
                session.grid = apply_mutation(session.grid, mutation)
            except GridError as exc:
                return _error(422, exc.code.value, str(exc), [exc.violation])
            return JSONResponse({"revision": session.grid.revision})

    @app.get("/v1/grids/{session_id}/report")
    def get_report(session_id: str) -> Response:
        session = store.get(session_id)
        if session is None:
            return _not_found(session_id)
        grid = session.grid
        return JSONResponse(report_to_dict(assess(grid, chunk_limit=chunk_limit), grid))

    @app.post("/v1/grids/{session_id}/what-if")
    async def post_what_if(session_id: str, request: Request) -> Response:
        session = store.get(session_id)
        if session is None:
            return _not_found(session_id)
        try:
            mutation, _ = _parse_mutation(await _json_body(request), with_revision=False)
        except MutationSchemaError as exc:
            return _error(422, "SCHEMA", str(exc))
        grid = session.grid
        try:
            result = what_if(grid, mutation, chunk_limit=chunk_limit)
        except GridError as exc:
            return _error(422, exc.code.value, str(exc), [exc.violation])
        return JSONResponse(what_if_to_dict(result, grid))

    @app.get("/v1/grids/{session_id}/lint")
    def get_lint(session_id: str) -> Response:
        session = store.get(session_id)
        if session is None:
            return _not_found(session_id)
        warnings = chunk_lint(session.grid, limit=chunk_limit)
        return JSONResponse(
            {
                "warnings": [
                    {"code": w.code, "observed": w.observed, "limit": w.limit}
                    for w in warnings
                ]
            }
        )

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
