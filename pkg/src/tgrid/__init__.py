"""tgrid: competitor-placement grids and the T-algorithm investment rules.

Lay competitors out on a per-KPI ordinal grid (Advanced / Intermediate /
Novice bands), then derive each KPI's strategy class, your own
competence level, and a concrete investment recommendation — plus
what-if exploration of candidate moves before committing them.
"""

from .catalog import DEFAULT_KPI_CATALOG, default_kpis
from .engine import (
    Action,
    BandCounts,
    ChunkLintWarning,
    CompetenceLevel,
    DEFAULT_CHUNK_LIMIT,
    Delta,
    DifferentiationReport,
    KpiAssessment,
    Mutation,
    NO_GUIDANCE,
    RECOMMENDATION_TABLE,
    Recommendation,
    StrategyClass,
    WhatIfResult,
    apply_mutation,
    assess,
    band_counts,
    chunk_lint,
    classify_competence,
    classify_strategy,
    diff_reports,
    recommend,
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
    Placement,
    Violation,
    ViolationCode,
    band_members,
    column,
    move_placement,
    new_grid,
    place,
    slugify,
    subject_entity,
    unplace,
    validate,
)
from .persistence import (
    DocumentError,
    export_grid_csv,
    export_report_csv,
    export_report_markdown,
    load_fixture_paper,
    load_grid,
    report_to_dict,
    save_grid,
    what_if_to_dict,
)

__version__ = "0.1.0"

__all__ = [
    "Action",
    "BandCounts",
    "BandSpec",
    "ChunkLintWarning",
    "CompetenceBand",
    "CompetenceLevel",
    "DEFAULT_BANDS",
    "DEFAULT_CHUNK_LIMIT",
    "DEFAULT_KPI_CATALOG",
    "Delta",
    "DifferentiationReport",
    "DocumentError",
    "Entity",
    "GridError",
    "InvalidGridError",
    "InvestmentGrid",
    "Kpi",
    "KpiAssessment",
    "Mutation",
    "NO_GUIDANCE",
    "Placement",
    "RECOMMENDATION_TABLE",
    "Recommendation",
    "StrategyClass",
    "Violation",
    "ViolationCode",
    "WhatIfResult",
    "apply_mutation",
    "assess",
    "band_counts",
    "band_members",
    "chunk_lint",
    "classify_competence",
    "classify_strategy",
    "column",
    "default_kpis",
    "diff_reports",
    "export_grid_csv",
    "export_report_csv",
    "export_report_markdown",
    "load_fixture_paper",
    "load_grid",
    "move_placement",
    "new_grid",
    "place",
    "recommend",
    "report_to_dict",
    "save_grid",
    "slugify",
    "subject_entity",
    "unplace",
    "validate",
    "what_if",
    "what_if_to_dict",
]
