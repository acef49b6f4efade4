// Wire shapes of the tgrid service. The UI renders these verbatim and never
// derives competence/strategy/recommendation labels on its own.

export type Band = 'advanced' | 'intermediate' | 'novice';

export const BANDS: Band[] = ['advanced', 'intermediate', 'novice'];

export interface KpiRecord {
  id: string;
  name: string;
}

export interface EntityRecord {
  id: string;
  name: string;
  subject: boolean;
}

export interface PlacementRecord {
  kpi: string;
  entity: string;
  band: Band;
  row: number;
}

export interface GridDocument {
  format: string;
  kpis: KpiRecord[];
  entities: EntityRecord[];
  bands: { advanced: number; intermediate: number; novice: number };
  placements: PlacementRecord[];
  revision: number;
}

export interface Recommendation {
  action: 'increase' | 'maintain' | 'decrease' | 'no_guidance';
  guidance: string;
}

export interface Assessment {
  kpi: string;
  name: string;
  advanced_count: number;
  novice_count: number;
  competence: 'advanced' | 'intermediate' | 'novice' | 'unplaced';
  competence_label: string;
  strategy: 'table_stakes' | 'differentiator' | 'not_applicable';
  strategy_label: string;
  recommendation: Recommendation;
  highlight: boolean;
}

export interface LintWarning {
  code: string;
  observed: number;
  limit: number;
}

export interface Report {
  grid_revision: number;
  assessments: Assessment[];
  warnings: LintWarning[];
}

export type MutationOp = 'place' | 'unplace' | 'move';

export interface MutationBody {
  op: MutationOp;
  kpi: string;
  entity: string;
  band?: Band;
  row?: number;
}

export interface Delta {
  kpi: string;
  field: string;
  before: unknown;
  after: unknown;
}

export interface WhatIfOutcome {
  before: Report;
  after: Report;
  deltas: Delta[];
}

export interface Violation {
  code: string;
  message: string;
  kpi?: string | null;
  entity?: string | null;
}
