"""Investment-grid data model: ordinal competitor placements per KPI.

A grid holds an ordered list of KPIs, a set of entities (exactly one of
which is the subject under analysis), and a sparse set of placements.
Each placement puts one entity into one cell of a KPI column, where a
cell is identified by a competence band (Advanced / Intermediate /
Novice) and a 0-based row rank inside that band (row 0 ranks highest).

Grid values are immutable. Every mutation returns a new grid with the
revision counter bumped; the input value is never touched, so holders
may read concurrently and replay edits freely.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, Optional

SLUG_RE = re.compile(r"[a-z0-9-]+")


def slugify(name: str) -> str:
    """Derive a slug id from a display name ("Harbour.Space" -> "harbour-space")."""
    slug = re.sub(r"[^a-z0-9]+", "-", name.lower()).strip("-")
    if not slug:
        raise ValueError(f"cannot derive a slug from {name!r}")
    return slug


class CompetenceBand(str, Enum):
    """Row group of a KPI column, strongest first."""

    ADVANCED = "advanced"
    INTERMEDIATE = "intermediate"
    NOVICE = "novice"


# Canonical band order for sorting and serialization.
BAND_ORDER = (CompetenceBand.ADVANCED, CompetenceBand.INTERMEDIATE, CompetenceBand.NOVICE)


class ViolationCode(str, Enum):
    DUP_ENTITY = "DUP_ENTITY"
    DUP_CELL = "DUP_CELL"
    ROW_OVERFLOW = "ROW_OVERFLOW"
    UNKNOWN_REF = "UNKNOWN_REF"
    NO_SUBJECT = "NO_SUBJECT"
    MULTI_SUBJECT = "MULTI_SUBJECT"


@dataclass(frozen=True)
class Violation:
    """One structural problem found in a grid; data, not an exception."""

    code: ViolationCode
    message: str
    kpi_id: Optional[str] = None
    entity_id: Optional[str] = None


class GridError(Exception):
    """Raised when an operation would break a grid invariant."""

    def __init__(self, violation: Violation):
        super().__init__(violation.message)
        self.violation = violation

    @property
    def code(self) -> ViolationCode:
        return self.violation.code


class InvalidGridError(Exception):
    """Raised when an operation requires a valid grid but validate() found problems."""

    def __init__(self, violations: list[Violation]):
        super().__init__("; ".join(v.message for v in violations) or "invalid grid")
        self.violations = violations


@dataclass(frozen=True)
class Kpi:
    id: str
    name: str
    position: int  # 0-based column index; contiguous within a grid


@dataclass(frozen=True)
class Entity:
    id: str
    name: str
    subject: bool = False


@dataclass(frozen=True)
class BandSpec:
    """Row capacity of each band; capacities need not cover every entity."""

    advanced_capacity: int
    intermediate_capacity: int
    novice_capacity: int

    def capacity(self, band: CompetenceBand) -> int:
        return {
            CompetenceBand.ADVANCED: self.advanced_capacity,
            CompetenceBand.INTERMEDIATE: self.intermediate_capacity,
            CompetenceBand.NOVICE: self.novice_capacity,
        }[band]


# Formula-derived default: 6 top cells, 3 bottom cells, 2 in between.
DEFAULT_BANDS = BandSpec(advanced_capacity=6, intermediate_capacity=2, novice_capacity=3)


@dataclass(frozen=True)
class Placement:
    kpi_id: str
    entity_id: str
    band: CompetenceBand
    row: int  # 0-based rank within the band; rows may be sparse


@dataclass(frozen=True)
class InvestmentGrid:
    kpis: tuple[Kpi, ...]
    entities: tuple[Entity, ...]
    bands: BandSpec
    placements: frozenset[Placement]
    revision: int = 0


def _kpi(grid: InvestmentGrid, kpi_id: str) -> Kpi:
    for kpi in grid.kpis:
        if kpi.id == kpi_id:
            return kpi
    raise GridError(
        Violation(ViolationCode.UNKNOWN_REF, f"no such KPI: {kpi_id!r}", kpi_id=kpi_id)
    )


def _entity(grid: InvestmentGrid, entity_id: str) -> Entity:
    for entity in grid.entities:
        if entity.id == entity_id:
            return entity
    raise GridError(
        Violation(ViolationCode.UNKNOWN_REF, f"no such entity: {entity_id!r}", entity_id=entity_id)
    )


def subject_entity(grid: InvestmentGrid) -> Entity:
    """The single entity flagged as the subject under analysis."""
    subjects = [e for e in grid.entities if e.subject]
    if not subjects:
        raise GridError(Violation(ViolationCode.NO_SUBJECT, "grid has no subject entity"))
    if len(subjects) > 1:
        raise GridError(
            Violation(
                ViolationCode.MULTI_SUBJECT,
                "grid has more than one subject entity",
                entity_id=subjects[1].id,
            )
        )
    return subjects[0]


def column(grid: InvestmentGrid, kpi_id: str) -> list[Placement]:
    """All placements of one KPI column, ordered by (band, row)."""
    members = [p for p in grid.placements if p.kpi_id == kpi_id]
    members.sort(key=lambda p: (BAND_ORDER.index(p.band), p.row))
    return members


def _check_slug(kind: str, value: str) -> None:
    if not value or not SLUG_RE.fullmatch(value):
        raise ValueError(f"{kind} id {value!r} is not a slug ([a-z0-9-]+)")


def new_grid(
    kpis: Iterable[Kpi], entities: Iterable[Entity], bands: BandSpec = DEFAULT_BANDS
) -> InvestmentGrid:
    """Build an empty grid at revision 0.

    KPI positions must run 0..n-1 in list order; exactly one entity must
    carry the subject flag. Raises GridError for subject/duplicate-id
    problems and ValueError for malformed inputs.
    """
    kpis = tuple(kpis)
    entities = tuple(entities)
    if bands.advanced_capacity < 1 or bands.intermediate_capacity < 1 or bands.novice_capacity < 1:
        raise ValueError("band capacities must each be >= 1")
    if not kpis:
        raise ValueError("a grid needs at least one KPI")

    seen_kpis: set[str] = set()
    for index, kpi in enumerate(kpis):
        _check_slug("KPI", kpi.id)
        if kpi.position != index:
            raise ValueError(
                f"KPI positions must be contiguous 0..{len(kpis) - 1} in order; "
                f"{kpi.id!r} has position {kpi.position} at index {index}"
            )
        if kpi.id in seen_kpis:
            raise GridError(
                Violation(
                    ViolationCode.DUP_ENTITY, f"duplicate KPI id {kpi.id!r}", kpi_id=kpi.id
                )
            )
        seen_kpis.add(kpi.id)

    seen_entities: set[str] = set()
    for entity in entities:
        _check_slug("entity", entity.id)
        if entity.id in seen_entities:
            raise GridError(
                Violation(
                    ViolationCode.DUP_ENTITY,
                    f"duplicate entity id {entity.id!r}",
                    entity_id=entity.id,
                )
            )
        seen_entities.add(entity.id)

    grid = InvestmentGrid(kpis=kpis, entities=entities, bands=bands, placements=frozenset())
    subject_entity(grid)  # raises NO_SUBJECT / MULTI_SUBJECT
    return grid


def place(
    grid: InvestmentGrid, kpi_id: str, entity_id: str, band: CompetenceBand, row: int
) -> InvestmentGrid:
    """Add one placement; returns a new grid with revision + 1."""
    _kpi(grid, kpi_id)
    _entity(grid, entity_id)
    if row < 0 or row >= grid.bands.capacity(band):
        raise GridError(
            Violation(
                ViolationCode.ROW_OVERFLOW,
                f"row {row} outside {band.value} capacity {grid.bands.capacity(band)}",
                kpi_id=kpi_id,
                entity_id=entity_id,
            )
        )
    for existing in grid.placements:
        if existing.kpi_id != kpi_id:
            continue
        if existing.entity_id == entity_id:
            raise GridError(
                Violation(
                    ViolationCode.DUP_ENTITY,
                    f"entity {entity_id!r} already placed in KPI {kpi_id!r}",
                    kpi_id=kpi_id,
                    entity_id=entity_id,
                )
            )
        if existing.band == band and existing.row == row:
            raise GridError(
                Violation(
                    ViolationCode.DUP_CELL,
                    f"cell ({band.value}, row {row}) of KPI {kpi_id!r} is occupied",
                    kpi_id=kpi_id,
                    entity_id=entity_id,
                )
            )
    added = Placement(kpi_id=kpi_id, entity_id=entity_id, band=band, row=row)
    return replace(grid, placements=grid.placements | {added}, revision=grid.revision + 1)


def _find_placement(grid: InvestmentGrid, kpi_id: str, entity_id: str) -> Placement:
    for p in grid.placements:
        if p.kpi_id == kpi_id and p.entity_id == entity_id:
            return p
    raise GridError(
        Violation(
            ViolationCode.UNKNOWN_REF,
            f"entity {entity_id!r} is not placed in KPI {kpi_id!r}",
            kpi_id=kpi_id,
            entity_id=entity_id,
        )
    )


def unplace(grid: InvestmentGrid, kpi_id: str, entity_id: str) -> InvestmentGrid:
    """Remove one placement; remaining rows keep their ranks (gaps allowed)."""
    removed = _find_placement(grid, kpi_id, entity_id)
    return replace(grid, placements=grid.placements - {removed}, revision=grid.revision + 1)


def move_placement(
    grid: InvestmentGrid, kpi_id: str, entity_id: str, new_band: CompetenceBand, new_row: int
) -> InvestmentGrid:
    """Relocate an existing placement to a free cell; one revision bump."""
    current = _find_placement(grid, kpi_id, entity_id)
    if new_row < 0 or new_row >= grid.bands.capacity(new_band):
        raise GridError(
            Violation(
                ViolationCode.ROW_OVERFLOW,
                f"row {new_row} outside {new_band.value} capacity {grid.bands.capacity(new_band)}",
                kpi_id=kpi_id,
                entity_id=entity_id,
            )
        )
    # The mover's own cell counts as occupied: moving onto it is rejected too.
    for existing in grid.placements:
        if existing.kpi_id == kpi_id and existing.band == new_band and existing.row == new_row:
            raise GridError(
                Violation(
                    ViolationCode.DUP_CELL,
                    f"cell ({new_band.value}, row {new_row}) of KPI {kpi_id!r} is occupied",
                    kpi_id=kpi_id,
                    entity_id=entity_id,
                )
            )
    moved = Placement(kpi_id=kpi_id, entity_id=entity_id, band=new_band, row=new_row)
    return replace(
        grid, placements=(grid.placements - {current}) | {moved}, revision=grid.revision + 1
    )


def band_members(grid: InvestmentGrid, kpi_id: str, band: CompetenceBand) -> list[str]:
    """Entity ids in one band of one KPI column, ordered by row (rank)."""
    _kpi(grid, kpi_id)
    members = [p for p in grid.placements if p.kpi_id == kpi_id and p.band == band]
    members.sort(key=lambda p: p.row)
    return [p.entity_id for p in members]


def validate(grid: InvestmentGrid) -> list[Violation]:
    """Check every structural invariant; violations are returned, never raised.

    Order is deterministic: grid-level problems first, then column
    problems by (KPI position, entity id, code).
    """
    violations: list[Violation] = []

    kpi_ids: set[str] = set()
    for kpi in grid.kpis:
        if kpi.id in kpi_ids:
            violations.append(
                Violation(ViolationCode.DUP_ENTITY, f"duplicate KPI id {kpi.id!r}", kpi_id=kpi.id)
            )
        kpi_ids.add(kpi.id)

    entity_ids: set[str] = set()
    for entity in grid.entities:
        if entity.id in entity_ids:
            violations.append(
                Violation(
                    ViolationCode.DUP_ENTITY,
                    f"duplicate entity id {entity.id!r}",
                    entity_id=entity.id,
                )
            )
        entity_ids.add(entity.id)

    subjects = [e for e in grid.entities if e.subject]
    if not subjects:
        violations.append(Violation(ViolationCode.NO_SUBJECT, "grid has no subject entity"))
    elif len(subjects) > 1:
        violations.append(
            Violation(
                ViolationCode.MULTI_SUBJECT,
                "grid has more than one subject entity",
                entity_id=subjects[1].id,
            )
        )

    positions = {kpi.id: kpi.position for kpi in grid.kpis}
    column_violations: list[tuple[int, str, Violation]] = []

    def add(placement: Placement, violation: Violation) -> None:
        column_violations.append(
            (positions.get(placement.kpi_id, len(positions)), placement.entity_id, violation)
        )

    seen_entity_cells: set[tuple[str, str]] = set()
    seen_cells: set[tuple[str, CompetenceBand, int]] = set()
    for placement in sorted(
        grid.placements, key=lambda p: (p.kpi_id, p.entity_id, BAND_ORDER.index(p.band), p.row)
    ):
        locus = dict(kpi_id=placement.kpi_id, entity_id=placement.entity_id)
        if placement.kpi_id not in kpi_ids:
            add(
                placement,
                Violation(
                    ViolationCode.UNKNOWN_REF,
                    f"placement references unknown KPI {placement.kpi_id!r}",
                    **locus,
                ),
            )
        if placement.entity_id not in entity_ids:
            add(
                placement,
                Violation(
                    ViolationCode.UNKNOWN_REF,
                    f"placement references unknown entity {placement.entity_id!r}",
                    **locus,
                ),
            )
        if placement.row < 0 or placement.row >= grid.bands.capacity(placement.band):
            add(
                placement,
                Violation(
                    ViolationCode.ROW_OVERFLOW,
                    f"row {placement.row} outside {placement.band.value} capacity "
                    f"{grid.bands.capacity(placement.band)}",
                    **locus,
                ),
            )
        entity_cell = (placement.kpi_id, placement.entity_id)
        if entity_cell in seen_entity_cells:
            add(
                placement,
                Violation(
                    ViolationCode.DUP_ENTITY,
                    f"entity {placement.entity_id!r} placed twice in KPI {placement.kpi_id!r}",
                    **locus,
                ),
            )
        seen_entity_cells.add(entity_cell)
        cell = (placement.kpi_id, placement.band, placement.row)
        if cell in seen_cells:
            add(
                placement,
                Violation(
                    ViolationCode.DUP_CELL,
                    f"cell ({placement.band.value}, row {placement.row}) of KPI "
                    f"{placement.kpi_id!r} holds two entities",
                    **locus,
                ),
            )
        seen_cells.add(cell)

    column_violations.sort(key=lambda item: (item[0], item[1], item[2].code.value))
    violations.extend(v for _, _, v in column_violations)
    return violations
