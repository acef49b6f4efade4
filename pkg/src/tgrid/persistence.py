"""Grid document format plus report and grid exports.

The on-disk format (``*.tgrid.json``) is canonical JSON: fixed key
order, placements sorted by (KPI position, band, row), two-space
indentation, trailing newline. Two structurally equal grids always
serialize to identical bytes, which keeps committed fixtures and
version-controlled grid files diffable.
"""

from __future__ import annotations

import csv
import io
import json
from importlib import resources
from typing import Any, Optional

from .engine import (
    CompetenceLevel,
    DifferentiationReport,
    WhatIfResult,
    StrategyClass,
)
from .grid import (
    BAND_ORDER,
    BandSpec,
    CompetenceBand,
    Entity,
    InvalidGridError,
    InvestmentGrid,
    Kpi,
    Placement,
    SLUG_RE,
    validate,
)

FORMAT_TAG = "tgrid/1"

FIXTURE_PAPER = "paper-table1.json"

# Display labels, used by the report and grid exports.
COMPETENCE_LABELS = {
    CompetenceLevel.ADVANCED: "Advanced Core Competence",
    CompetenceLevel.INTERMEDIATE: "Intermediate, progress made, needs improvement",
    CompetenceLevel.NOVICE: "Novice/Not on Radar",
    CompetenceLevel.UNPLACED: "",
}

BAND_LABELS = {
    CompetenceBand.ADVANCED: "Advanced Core Competence",
    CompetenceBand.INTERMEDIATE: "Intermediate, progress made, needs improvement",
    CompetenceBand.NOVICE: "Novice/Not on Radar",
}

STRATEGY_LABELS = {
    StrategyClass.TABLE_STAKES: "Table Stakes",
    StrategyClass.DIFFERENTIATOR: "Differentiator",
    StrategyClass.NOT_APPLICABLE: "NA",
}


class DocumentError(Exception):
    """A grid document failed to decode.

    code is PARSE (not JSON), FORMAT (missing/wrong format tag), SCHEMA
    (malformed field), or INVALID (decoded but fails grid validation;
    violations carry the detail).
    """

    def __init__(self, code: str, message: str, violations: Optional[list] = None):
        super().__init__(message)
        self.code = code
        self.violations = violations or []


def save_grid(grid: InvestmentGrid) -> bytes:
    """Serialize a valid grid to canonical UTF-8 JSON bytes."""
    problems = validate(grid)
    if problems:
        raise InvalidGridError(problems)
    positions = {kpi.id: kpi.position for kpi in grid.kpis}
    placements = sorted(
        grid.placements,
        key=lambda p: (positions[p.kpi_id], BAND_ORDER.index(p.band), p.row),
    )
    document = {
        "format": FORMAT_TAG,
        "kpis": [{"id": kpi.id, "name": kpi.name} for kpi in grid.kpis],
        "entities": [
            {"id": e.id, "name": e.name, "subject": e.subject} for e in grid.entities
        ],
        "bands": {
            "advanced": grid.bands.advanced_capacity,
            "intermediate": grid.bands.intermediate_capacity,
            "novice": grid.bands.novice_capacity,
        },
        "placements": [
            {"kpi": p.kpi_id, "entity": p.entity_id, "band": p.band.value, "row": p.row}
            for p in placements
        ],
        "revision": grid.revision,
    }
    return (json.dumps(document, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def _require_keys(record: dict, expected: set[str], where: str) -> None:
    actual = set(record)
    if actual != expected:
        missing = sorted(expected - actual)
        unknown = sorted(actual - expected)
        parts = []
        if missing:
            parts.append(f"missing {missing}")
        if unknown:
            parts.append(f"unknown {unknown}")
        raise DocumentError("SCHEMA", f"{where}: {', '.join(parts)}")


def _require_slug(value: Any, where: str) -> str:
    if not isinstance(value, str) or not SLUG_RE.fullmatch(value or " "):
        raise DocumentError("SCHEMA", f"{where}: {value!r} is not a slug ([a-z0-9-]+)")
    return value


def _require_str(value: Any, where: str) -> str:
    if not isinstance(value, str) or not value:
        raise DocumentError("SCHEMA", f"{where}: expected a non-empty string")
    return value


def _require_nonneg_int(value: Any, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise DocumentError("SCHEMA", f"{where}: expected a non-negative integer")
    return value


def load_grid(data: bytes) -> InvestmentGrid:
    """Decode and fully validate a grid document."""
    try:
        document = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise DocumentError("PARSE", f"not a JSON document: {exc}") from exc
    if not isinstance(document, dict) or document.get("format") != FORMAT_TAG:
        raise DocumentError("FORMAT", f"missing or wrong format tag (expected {FORMAT_TAG!r})")
    _require_keys(
        document,
        {"format", "kpis", "entities", "bands", "placements", "revision"},
        "document",
    )

    if not isinstance(document["kpis"], list) or not document["kpis"]:
        raise DocumentError("SCHEMA", "kpis: expected a non-empty list")
    kpis = []
    for index, record in enumerate(document["kpis"]):
        if not isinstance(record, dict):
            raise DocumentError("SCHEMA", f"kpis[{index}]: expected an object")
        _require_keys(record, {"id", "name"}, f"kpis[{index}]")
        kpis.append(
            Kpi(
                id=_require_slug(record["id"], f"kpis[{index}].id"),
                name=_require_str(record["name"], f"kpis[{index}].name"),
                position=index,
            )
        )

    if not isinstance(document["entities"], list):
        raise DocumentError("SCHEMA", "entities: expected a list")
    entities = []
    for index, record in enumerate(document["entities"]):
        if not isinstance(record, dict):
            raise DocumentError("SCHEMA", f"entities[{index}]: expected an object")
        _require_keys(record, {"id", "name", "subject"}, f"entities[{index}]")
        if not isinstance(record["subject"], bool):
            raise DocumentError("SCHEMA", f"entities[{index}].subject: expected a boolean")
        entities.append(
            Entity(
                id=_require_slug(record["id"], f"entities[{index}].id"),
                name=_require_str(record["name"], f"entities[{index}].name"),
                subject=record["subject"],
            )
        )

    bands_record = document["bands"]
    if not isinstance(bands_record, dict):
        raise DocumentError("SCHEMA", "bands: expected an object")
    _require_keys(bands_record, {"advanced", "intermediate", "novice"}, "bands")
    capacities = {}
    for key in ("advanced", "intermediate", "novice"):
        capacity = _require_nonneg_int(bands_record[key], f"bands.{key}")
        if capacity < 1:
            raise DocumentError("SCHEMA", f"bands.{key}: capacity must be >= 1")
        capacities[key] = capacity
    bands = BandSpec(
        advanced_capacity=capacities["advanced"],
        intermediate_capacity=capacities["intermediate"],
        novice_capacity=capacities["novice"],
    )

    if not isinstance(document["placements"], list):
        raise DocumentError("SCHEMA", "placements: expected a list")
    band_values = {band.value: band for band in CompetenceBand}
    placements = []
    for index, record in enumerate(document["placements"]):
        if not isinstance(record, dict):
            raise DocumentError("SCHEMA", f"placements[{index}]: expected an object")
        _require_keys(record, {"kpi", "entity", "band", "row"}, f"placements[{index}]")
        band_value = record["band"]
        if band_value not in band_values:
            raise DocumentError(
                "SCHEMA",
                f"placements[{index}].band: {band_value!r} is not one of "
                f"{sorted(band_values)}",
            )
        placement = Placement(
            kpi_id=_require_slug(record["kpi"], f"placements[{index}].kpi"),
            entity_id=_require_slug(record["entity"], f"placements[{index}].entity"),
            band=band_values[band_value],
            row=_require_nonneg_int(record["row"], f"placements[{index}].row"),
        )
        if placement in placements:
            raise DocumentError("SCHEMA", f"placements[{index}]: duplicate placement record")
        placements.append(placement)

    grid = InvestmentGrid(
        kpis=tuple(kpis),
        entities=tuple(entities),
        bands=bands,
        placements=frozenset(placements),
        revision=_require_nonneg_int(document["revision"], "revision"),
    )
    problems = validate(grid)
    if problems:
        raise DocumentError(
            "INVALID",
            "; ".join(f"{v.code.value}: {v.message}" for v in problems),
            violations=problems,
        )
    return grid


def load_fixture_paper() -> InvestmentGrid:
    """The committed transcription of the published case study's investment grid."""
    data = resources.files("tgrid").joinpath("fixtures").joinpath(FIXTURE_PAPER).read_bytes()
    return load_grid(data)


def _kpi_names(grid: InvestmentGrid) -> dict[str, str]:
    return {kpi.id: kpi.name for kpi in grid.kpis}


def _check_report_matches(report: DifferentiationReport, grid: InvestmentGrid) -> None:
    if [a.kpi_id for a in report.assessments] != [kpi.id for kpi in grid.kpis]:
        raise ValueError("report KPI set does not match grid")


def report_to_dict(report: DifferentiationReport, grid: InvestmentGrid) -> dict:
    """Structured (JSON-ready) form of a report; the wire shape of the API."""
    _check_report_matches(report, grid)
    names = _kpi_names(grid)
    return {
        "grid_revision": report.grid_revision,
        "assessments": [
            {
                "kpi": a.kpi_id,
                "name": names[a.kpi_id],
                "advanced_count": a.counts.advanced_count,
                "novice_count": a.counts.novice_count,
                "competence": a.competence.value,
                "competence_label": COMPETENCE_LABELS[a.competence],
                "strategy": a.strategy.value,
                "strategy_label": STRATEGY_LABELS[a.strategy],
                "recommendation": {
                    "action": a.recommendation.action.value,
                    "guidance": a.recommendation.guidance,
                },
                "highlight": a.highlight,
            }
            for a in report.assessments
        ],
        "warnings": [
            {"code": w.code, "observed": w.observed, "limit": w.limit} for w in report.warnings
        ],
    }


def _encode_delta_value(value: Any) -> Any:
    from .engine import Recommendation  # local to avoid an import cycle at module load

    if isinstance(value, Recommendation):
        return {"action": value.action.value, "guidance": value.guidance}
    if hasattr(value, "value"):
        return value.value
    return value


def what_if_to_dict(result: WhatIfResult, grid: InvestmentGrid) -> dict:
    """Structured form of a what-if outcome (before/after reports plus deltas)."""
    return {
        "before": report_to_dict(result.before, grid),
        "after": report_to_dict(result.after, grid),
        "deltas": [
            {
                "kpi": d.kpi_id,
                "field": d.field,
                "before": _encode_delta_value(d.before),
                "after": _encode_delta_value(d.after),
            }
            for d in result.deltas
        ],
    }


def export_report_markdown(report: DifferentiationReport, grid: InvestmentGrid) -> str:
    """Pipe-table rendering with one row per KPI; blind spots are marked."""
    _check_report_matches(report, grid)
    names = _kpi_names(grid)
    lines = [
        "| KPI | Competence | Strategy | Recommendation |",
        "| --- | --- | --- | --- |",
    ]
    for a in report.assessments:
        name = names[a.kpi_id]
        if a.highlight:
            name += " (blind spot)"
        lines.append(
            f"| {name} | {COMPETENCE_LABELS[a.competence]} | "
            f"{STRATEGY_LABELS[a.strategy]} | {a.recommendation.guidance} |"
        )
    if report.warnings:
        lines.append("")
        lines.append("Warnings:")
        for w in report.warnings:
            noun = "KPIs" if w.code == "CHUNK_KPIS" else "entities"
            lines.append(f"- {w.code}: {w.observed} {noun} exceed the {w.limit}-chunk limit")
    return "\n".join(lines) + "\n"


def export_report_csv(report: DifferentiationReport, grid: InvestmentGrid) -> str:
    """Flat per-KPI rows for spreadsheet import."""
    _check_report_matches(report, grid)
    names = _kpi_names(grid)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(
        [
            "kpi",
            "name",
            "advanced_count",
            "novice_count",
            "competence",
            "strategy",
            "action",
            "guidance",
            "highlight",
        ]
    )
    for a in report.assessments:
        writer.writerow(
            [
                a.kpi_id,
                names[a.kpi_id],
                a.counts.advanced_count,
                a.counts.novice_count,
                a.competence.value,
                a.strategy.value,
                a.recommendation.action.value,
                a.recommendation.guidance,
                "true" if a.highlight else "false",
            ]
        )
    return buffer.getvalue()


def export_grid_csv(grid: InvestmentGrid) -> str:
    """Grid rendered the way the source table reads: KPIs as columns,
    band rows beneath, band label on each band's first row."""
    entity_names = {e.id: e.name for e in grid.entities}
    cells: dict[tuple[str, CompetenceBand, int], str] = {
        (p.kpi_id, p.band, p.row): entity_names[p.entity_id] for p in grid.placements
    }
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([""] + [kpi.name for kpi in grid.kpis])
    for band in BAND_ORDER:
        for row in range(grid.bands.capacity(band)):
            label = BAND_LABELS[band] if row == 0 else ""
            writer.writerow(
                [label] + [cells.get((kpi.id, band, row), "") for kpi in grid.kpis]
            )
    return buffer.getvalue()
