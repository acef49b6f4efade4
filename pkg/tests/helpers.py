"""Shared test builders and independent oracles.

The random grids are assembled exclusively through the public grid
operations, so every generated grid is valid by construction. The
oracles deliberately re-derive classifications from a literal
cell-array rendering of a column — the way a spreadsheet formula
would see it — instead of calling the engine's counting helpers.
"""

from __future__ import annotations

import random
from typing import Optional

from tgrid import (
    BandSpec,
    CompetenceBand,
    Entity,
    InvestmentGrid,
    Kpi,
    Mutation,
    new_grid,
    place,
)

BAND_LIST = list(CompetenceBand)


def make_entities(count: int, subject_index: int = 0) -> list[Entity]:
    return [
        Entity(id=f"ent-{i}", name=f"Entity {i}", subject=(i == subject_index))
        for i in range(count)
    ]


def make_kpis(count: int) -> list[Kpi]:
    return [Kpi(id=f"kpi-{i}", name=f"KPI {i}", position=i) for i in range(count)]


def random_grid(
    rng: random.Random,
    max_kpis: int = 6,
    max_entities: int = 7,
    density: float = 0.5,
    bands: Optional[BandSpec] = None,
) -> InvestmentGrid:
    n_kpis = rng.randint(1, max_kpis)
    n_entities = rng.randint(1, max_entities)
    kpis = make_kpis(n_kpis)
    entities = make_entities(n_entities, subject_index=rng.randrange(n_entities))
    if bands is None:
        bands = BandSpec(
            advanced_capacity=rng.randint(1, 4),
            intermediate_capacity=rng.randint(1, 4),
            novice_capacity=rng.randint(1, 5),
        )
    grid = new_grid(kpis, entities, bands=bands)
    for kpi in kpis:
        occupied: set[tuple[CompetenceBand, int]] = set()
        for entity in entities:
            if rng.random() >= density:
                continue
            band = rng.choice(BAND_LIST)
            free = [
                row
                for row in range(bands.capacity(band))
                if (band, row) not in occupied
            ]
            if not free:
                continue
            row = rng.choice(free)
            occupied.add((band, row))
            grid = place(grid, kpi.id, entity.id, band, row)
    return grid


def free_cells(grid: InvestmentGrid, kpi_id: str) -> list[tuple[CompetenceBand, int]]:
    occupied = {(p.band, p.row) for p in grid.placements if p.kpi_id == kpi_id}
    return [
        (band, row)
        for band in BAND_LIST
        for row in range(grid.bands.capacity(band))
        if (band, row) not in occupied
    ]


def column_entities(grid: InvestmentGrid, kpi_id: str) -> set[str]:
    return {p.entity_id for p in grid.placements if p.kpi_id == kpi_id}


def random_mutation(rng: random.Random, grid: InvestmentGrid) -> Optional[Mutation]:
    """A legal mutation on the grid, or None when none could be found."""
    placements = sorted(grid.placements, key=lambda p: (p.kpi_id, p.entity_id))
    for _ in range(30):
        op = rng.choice(("place", "unplace", "move"))
        if op == "unplace" and placements:
            p = rng.choice(placements)
            return Mutation(op="unplace", kpi_id=p.kpi_id, entity_id=p.entity_id)
        if op == "place":
            kpi = rng.choice(grid.kpis)
            outside = [
                e for e in grid.entities if e.id not in column_entities(grid, kpi.id)
            ]
            free = free_cells(grid, kpi.id)
            if outside and free:
                band, row = rng.choice(free)
                return Mutation(
                    op="place",
                    kpi_id=kpi.id,
                    entity_id=rng.choice(outside).id,
                    band=band,
                    row=row,
                )
        if op == "move" and placements:
            p = rng.choice(placements)
            free = free_cells(grid, p.kpi_id)
            if free:
                band, row = rng.choice(free)
                return Mutation(
                    op="move", kpi_id=p.kpi_id, entity_id=p.entity_id, band=band, row=row
                )
    return None


# --- oracles ---------------------------------------------------------------


def render_band_cells(grid: InvestmentGrid, kpi_id: str, band: CompetenceBand) -> list[str]:
    """The column's band region as literal cells: names where placed, '' elsewhere."""
    names = {e.id: e.name for e in grid.entities}
    cells = [""] * grid.bands.capacity(band)
    for p in grid.placements:
        if p.kpi_id == kpi_id and p.band == band:
            cells[p.row] = names[p.entity_id]
    return cells


def counta(cells: list[str]) -> int:
    return sum(1 for cell in cells if cell != "")


def spreadsheet_strategy(top_cells: list[str], bottom_cells: list[str]) -> str:
    """Literal evaluation of
    IF(COUNTA(top)>COUNTA(bottom), "Table Stakes",
       IF(COUNTA(top)=0, "NA", "Differentiator"))."""
    if counta(top_cells) > counta(bottom_cells):
        return "Table Stakes"
    if counta(top_cells) == 0:
        return "NA"
    return "Differentiator"


def spreadsheet_strategy_for(grid: InvestmentGrid, kpi_id: str) -> str:
    return spreadsheet_strategy(
        render_band_cells(grid, kpi_id, CompetenceBand.ADVANCED),
        render_band_cells(grid, kpi_id, CompetenceBand.NOVICE),
    )


def region_scan_competence(grid: InvestmentGrid, kpi_id: str) -> str:
    """Find the band region holding the subject's display name."""
    subject_name = next(e.name for e in grid.entities if e.subject)
    for band, label in (
        (CompetenceBand.ADVANCED, "advanced"),
        (CompetenceBand.INTERMEDIATE, "intermediate"),
        (CompetenceBand.NOVICE, "novice"),
    ):
        if subject_name in render_band_cells(grid, kpi_id, band):
            return label
    return "unplaced"


# Oracle label → engine enum value, for comparisons.
STRATEGY_LABEL_TO_VALUE = {
    "Table Stakes": "table_stakes",
    "Differentiator": "differentiator",
    "NA": "not_applicable",
}
