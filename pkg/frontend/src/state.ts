// Pure view-model builders: GridDocument/Report in, render-ready structures
// out. No fetching, no DOM, and deliberately no classification rules.

import { BANDS } from './types.js';
import type { Band, GridDocument, MutationBody, Report } from './types.js';

export interface CellView {
  band: Band;
  row: number;
  entityId: string | null;
  entityName: string | null;
  subject: boolean;
}

export interface LaneView {
  band: Band;
  cells: CellView[];
}

export interface ColumnView {
  kpiId: string;
  name: string;
  lanes: LaneView[];
}

export interface BoardView {
  revision: number;
  columns: ColumnView[];
  roster: { entityId: string; name: string; subject: boolean }[];
}

export const BAND_TITLES: Record<Band, string> = {
  advanced: 'Advanced',
  intermediate: 'Intermediate',
  novice: 'Novice',
};

export function buildBoard(doc: GridDocument): BoardView {
  const namesById = new Map(doc.entities.map((e) => [e.id, e.name]));
  const subjects = new Set(doc.entities.filter((e) => e.subject).map((e) => e.id));

  const columns = doc.kpis.map((kpi) => {
    const byCell = new Map<string, string>();
    for (const p of doc.placements) {
      if (p.kpi === kpi.id) byCell.set(`${p.band}:${p.row}`, p.entity);
    }
    const lanes = BANDS.map((band) => {
      const cells: CellView[] = [];
      for (let row = 0; row < doc.bands[band]; row++) {
        const entityId = byCell.get(`${band}:${row}`) ?? null;
        cells.push({
          band,
          row,
          entityId,
          entityName: entityId ? (namesById.get(entityId) ?? entityId) : null,
          subject: entityId !== null && subjects.has(entityId),
        });
      }
      return { band, cells };
    });
    return { kpiId: kpi.id, name: kpi.name, lanes };
  });

  return {
    revision: doc.revision,
    columns,
    roster: doc.entities.map((e) => ({ entityId: e.id, name: e.name, subject: e.subject })),
  };
}

// Entities already ranked somewhere in the KPI's column.
export function placedInColumn(doc: GridDocument, kpiId: string): Set<string> {
  const placed = new Set<string>();
  for (const p of doc.placements) {
    if (p.kpi === kpiId) placed.add(p.entity);
  }
  return placed;
}

// Translate "chip dropped on a cell" into the mutation the service expects:
// a move when the entity is already in that column, a place otherwise.
export function dropMutation(
  doc: GridDocument,
  kpiId: string,
  entityId: string,
  band: Band,
  row: number,
): MutationBody {
  const op = placedInColumn(doc, kpiId).has(entityId) ? 'move' : 'place';
  return { op, kpi: kpiId, entity: entityId, band, row };
}

export interface ReportRow {
  kpiId: string;
  name: string;
  advancedCount: number;
  noviceCount: number;
  competenceLabel: string;
  strategyLabel: string;
  action: string;
  guidance: string;
  highlight: boolean;
}

export function reportRows(report: Report): ReportRow[] {
  return report.assessments.map((a) => ({
    kpiId: a.kpi,
    name: a.name,
    advancedCount: a.advanced_count,
    noviceCount: a.novice_count,
    competenceLabel: a.competence_label,
    strategyLabel: a.strategy_label,
    action: a.recommendation.action,
    guidance: a.recommendation.guidance,
    highlight: a.highlight,
  }));
}

// A starter document for analysts who want to begin from nothing: the
// standard eight KPIs, the subject alone, no placements. Band sizes match
// the service's own defaults.
export function blankDocument(subjectName: string): GridDocument {
  const kpiNames = [
    'Appeals to Human Instinct',
    'Career Accelerant',
    'Growth + Margins',
    'Rundle',
    'Vertical Integration',
    'Benjamin Button Product',
    'Visionary Storytelling',
    'Likeability',
  ];
  const slug = (name: string) =>
    name
      .toLowerCase()
      .replace(/[^a-z0-9]+/g, '-')
      .replace(/^-+|-+$/g, '');
  return {
    format: 'tgrid/1',
    kpis: kpiNames.map((name) => ({ id: slug(name), name })),
    entities: [{ id: slug(subjectName) || 'subject', name: subjectName, subject: true }],
    bands: { advanced: 6, intermediate: 2, novice: 3 },
    placements: [],
    revision: 0,
  };
}
