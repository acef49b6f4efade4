"""T-algorithm rule engine: per-KPI strategy classes, the subject's
competence level, and investment recommendations.

The two classification rules mirror the framework's spreadsheet logic:

* A KPI is Table Stakes when more entities sit in the Advanced band of
  its column than in the Novice band; failing that it is Not Applicable
  when the Advanced band is empty, and a Differentiator otherwise.
  Branch order matters: an empty Advanced band is NA even when the
  Novice band is populated.
* The subject's competence level is simply the band holding its
  placement in that column (Unplaced when it has none).

Recommendations come from a fixed competence x strategy lookup whose
guidance strings are carried verbatim; the one blank cell of that table
(Advanced x Not Applicable) maps to a NoGuidance sentinel rather than
invented text.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional

from .grid import (
    CompetenceBand,
    InvalidGridError,
    InvestmentGrid,
    band_members,
    move_placement,
    place,
    subject_entity,
    unplace,
    validate,
    _kpi,
)

DEFAULT_CHUNK_LIMIT = 7


class StrategyClass(str, Enum):
    TABLE_STAKES = "table_stakes"
    DIFFERENTIATOR = "differentiator"
    NOT_APPLICABLE = "not_applicable"


class CompetenceLevel(str, Enum):
    ADVANCED = "advanced"
    INTERMEDIATE = "intermediate"
    NOVICE = "novice"
    UNPLACED = "unplaced"


class Action(str, Enum):
    INCREASE = "increase"
    MAINTAIN = "maintain"
    DECREASE = "decrease"
    NO_GUIDANCE = "no_guidance"


@dataclass(frozen=True)
class BandCounts:
    """Occupancy of the two bands the strategy rule looks at."""

    kpi_id: str
    advanced_count: int
    novice_count: int


@dataclass(frozen=True)
class Recommendation:
    action: Action
    guidance: str


# The "how to spend it" lookup. Rows are the subject's competence level,
# columns the KPI's strategy class. Guidance strings are verbatim; the
# blank Advanced x NotApplicable cell is represented by NO_GUIDANCE.
NO_GUIDANCE = Recommendation(Action.NO_GUIDANCE, "")

RECOMMENDATION_TABLE: dict[tuple[CompetenceLevel, StrategyClass], Recommendation] = {
    (CompetenceLevel.ADVANCED, StrategyClass.NOT_APPLICABLE): NO_GUIDANCE,
    (CompetenceLevel.ADVANCED, StrategyClass.DIFFERENTIATOR): Recommendation(
        Action.MAINTAIN,
        "Maintain investment as you've identified a way to differentiate from "
        "competitors. Continue to monitor ROI",
    ),
    (CompetenceLevel.ADVANCED, StrategyClass.TABLE_STAKES): Recommendation(
        Action.MAINTAIN,
        "Maintain investment. Don't stop innovating or accelerating here as "
        "competitors will continue to invest.",
    ),
    (CompetenceLevel.INTERMEDIATE, StrategyClass.NOT_APPLICABLE): Recommendation(
        Action.DECREASE,
        "Decrease investment unless you think this is truly a differentiator",
    ),
    (CompetenceLevel.INTERMEDIATE, StrategyClass.DIFFERENTIATOR): Recommendation(
        Action.MAINTAIN,
        "Maintain investment as you're investing in a potential differentiator. "
        "Continue to test & learn and decide to accelerate/decelerate.",
    ),
    (CompetenceLevel.INTERMEDIATE, StrategyClass.TABLE_STAKES): Recommendation(
        Action.MAINTAIN,
        "Maintain investment, and increase investment if resources allow",
    ),
    (CompetenceLevel.NOVICE, StrategyClass.NOT_APPLICABLE): Recommendation(
        Action.MAINTAIN,
        "Maintain investment, don't invest in pillars that aren't applicable to your company",
    ),
    (CompetenceLevel.NOVICE, StrategyClass.DIFFERENTIATOR): Recommendation(
        Action.INCREASE,
        "Increase investment if all table stake strategies are a core competence "
        "or you have no differentiators.",
    ),
    (CompetenceLevel.NOVICE, StrategyClass.TABLE_STAKES): Recommendation(
        Action.INCREASE,
        "Increase investment. Put this strategy on your roadmap and implement "
        "immediate next steps to start making progress.",
    ),
}


@dataclass(frozen=True)
class ChunkLintWarning:
    """Visual-complexity warning: a dimension exceeds working-memory size."""

    code: str  # CHUNK_KPIS or CHUNK_ENTITIES
    observed: int
    limit: int


@dataclass(frozen=True)
class KpiAssessment:
    kpi_id: str
    counts: BandCounts
    strategy: StrategyClass
    competence: CompetenceLevel
    recommendation: Recommendation
    highlight: bool  # blind-spot flag


@dataclass(frozen=True)
class DifferentiationReport:
    grid_revision: int
    assessments: tuple[KpiAssessment, ...]  # one per KPI, in position order
    warnings: tuple[ChunkLintWarning, ...]


@dataclass(frozen=True)
class Mutation:
    """One grid edit: place, unplace, or move."""

    op: str  # "place" | "unplace" | "move"
    kpi_id: str
    entity_id: str
    band: Optional[CompetenceBand] = None
    row: Optional[int] = None


@dataclass(frozen=True)
class Delta:
    """One field of one KPI's assessment that changed."""

    kpi_id: str
    field: str
    before: Any
    after: Any


@dataclass(frozen=True)
class WhatIfResult:
    before: DifferentiationReport
    after: DifferentiationReport
    deltas: tuple[Delta, ...]


def band_counts(grid: InvestmentGrid, kpi_id: str) -> BandCounts:
    """Occupancy of the Advanced and Novice bands; the subject counts too."""
    return BandCounts(
        kpi_id=kpi_id,
        advanced_count=len(band_members(grid, kpi_id, CompetenceBand.ADVANCED)),
        novice_count=len(band_members(grid, kpi_id, CompetenceBand.NOVICE)),
    )


def classify_strategy(counts: BandCounts) -> StrategyClass:
    """Strategy class from band occupancy.

    Branches in rule order: Table Stakes when the Advanced band
    outnumbers the Novice band, else NA when the Advanced band is empty,
    else Differentiator. Consequence: NA holds exactly when
    advanced_count = 0, even with a populated Novice band.
    """
    if counts.advanced_count > counts.novice_count:
        return StrategyClass.TABLE_STAKES
    if counts.advanced_count == 0:
        return StrategyClass.NOT_APPLICABLE
    return StrategyClass.DIFFERENTIATOR


_BAND_TO_LEVEL = {
    CompetenceBand.ADVANCED: CompetenceLevel.ADVANCED,
    CompetenceBand.INTERMEDIATE: CompetenceLevel.INTERMEDIATE,
    CompetenceBand.NOVICE: CompetenceLevel.NOVICE,
}


def classify_competence(grid: InvestmentGrid, kpi_id: str) -> CompetenceLevel:
    """The band holding the subject's placement; Unplaced when absent."""
    _kpi(grid, kpi_id)
    subject = subject_entity(grid)
    for placement in grid.placements:
        if placement.kpi_id == kpi_id and placement.entity_id == subject.id:
            return _BAND_TO_LEVEL[placement.band]
    return CompetenceLevel.UNPLACED


def recommend(competence: CompetenceLevel, strategy: StrategyClass) -> Recommendation:
    """Verbatim lookup-table cell for a (competence, strategy) pair.

    An unplaced subject is looked up on the Novice row ("Not on Radar"),
    though it is still reported as Unplaced elsewhere.
    """
    if competence is CompetenceLevel.UNPLACED:
        competence = CompetenceLevel.NOVICE
    return RECOMMENDATION_TABLE[(competence, strategy)]


def chunk_lint(grid: InvestmentGrid, limit: int = DEFAULT_CHUNK_LIMIT) -> list[ChunkLintWarning]:
    """Warn when KPI or entity counts exceed the 7-chunk working-memory limit."""
    if limit < 1:
        raise ValueError("chunk limit must be >= 1")
    warnings = []
    if len(grid.kpis) > limit:
        warnings.append(ChunkLintWarning(code="CHUNK_KPIS", observed=len(grid.kpis), limit=limit))
    if len(grid.entities) > limit:
        warnings.append(
            ChunkLintWarning(code="CHUNK_ENTITIES", observed=len(grid.entities), limit=limit)
        )
    return warnings


def assess(grid: InvestmentGrid, chunk_limit: int = DEFAULT_CHUNK_LIMIT) -> DifferentiationReport:
    """Full differentiation report: one assessment per KPI plus lint warnings.

    The grid must be valid; validation problems are raised as a single
    InvalidGridError rather than partially assessed.
    """
    problems = validate(grid)
    if problems:
        raise InvalidGridError(problems)
    assessments = []
    for kpi in grid.kpis:
        counts = band_counts(grid, kpi.id)
        strategy = classify_strategy(counts)
        competence = classify_competence(grid, kpi.id)
        assessments.append(
            KpiAssessment(
                kpi_id=kpi.id,
                counts=counts,
                strategy=strategy,
                competence=competence,
                recommendation=recommend(competence, strategy),
                highlight=(
                    competence in (CompetenceLevel.NOVICE, CompetenceLevel.UNPLACED)
                    and strategy is StrategyClass.DIFFERENTIATOR
                ),
            )
        )
    return DifferentiationReport(
        grid_revision=grid.revision,
        assessments=tuple(assessments),
        warnings=tuple(chunk_lint(grid, chunk_limit)),
    )


def apply_mutation(grid: InvestmentGrid, mutation: Mutation) -> InvestmentGrid:
    """Apply one Mutation through the corresponding grid operation."""
    if mutation.op == "place":
        if mutation.band is None or mutation.row is None:
            raise ValueError("place needs band and row")
        return place(grid, mutation.kpi_id, mutation.entity_id, mutation.band, mutation.row)
    if mutation.op == "unplace":
        return unplace(grid, mutation.kpi_id, mutation.entity_id)
    if mutation.op == "move":
        if mutation.band is None or mutation.row is None:
            raise ValueError("move needs band and row")
        return move_placement(
            grid, mutation.kpi_id, mutation.entity_id, mutation.band, mutation.row
        )
    raise ValueError(f"unknown mutation op {mutation.op!r}")


# Assessment fields compared by diff_reports, in output order.
DIFF_FIELDS = (
    "advanced_count",
    "novice_count",
    "strategy",
    "competence",
    "recommendation",
    "highlight",
)


def _field_value(assessment: KpiAssessment, field: str) -> Any:
    if field == "advanced_count":
        return assessment.counts.advanced_count
    if field == "novice_count":
        return assessment.counts.novice_count
    return getattr(assessment, field)


def diff_reports(
    before: DifferentiationReport, after: DifferentiationReport
) -> list[Delta]:
    """Per-KPI field diff of two reports over the same KPI set."""
    before_ids = [a.kpi_id for a in before.assessments]
    after_ids = [a.kpi_id for a in after.assessments]
    if before_ids != after_ids:
        raise ValueError("reports cover different KPI sets")
    deltas = []
    for old, new in zip(before.assessments, after.assessments):
        for field in DIFF_FIELDS:
            old_value = _field_value(old, field)
            new_value = _field_value(new, field)
            if old_value != new_value:
                deltas.append(Delta(kpi_id=old.kpi_id, field=field, before=old_value, after=new_value))
    return deltas


def what_if(
    grid: InvestmentGrid, mutation: Mutation, chunk_limit: int = DEFAULT_CHUNK_LIMIT
) -> WhatIfResult:
    """Assess a mutation without committing it; the input grid is untouched."""
    before = assess(grid, chunk_limit)
    after = assess(apply_mutation(grid, mutation), chunk_limit)
    return WhatIfResult(before=before, after=after, deltas=tuple(diff_reports(before, after)))
