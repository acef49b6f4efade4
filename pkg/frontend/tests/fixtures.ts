// Hand-rolled snapshots mirroring real service responses for a one-KPI,
// two-entity grid. The labels are the server's vocabulary; tests treat them
// as opaque strings.

import type { Assessment, GridDocument, Report } from '../src/types.js';

export function docWithSubjectIn(
  band: 'advanced' | 'intermediate' | 'novice' | null,
  revision: number,
): GridDocument {
  return {
    format: 'tgrid/1',
    kpis: [{ id: 'rundle', name: 'Rundle' }],
    entities: [
      { id: 'acme', name: 'Acme', subject: true },
      { id: 'rival', name: 'Rival', subject: false },
    ],
    bands: { advanced: 6, intermediate: 2, novice: 3 },
    placements: band === null ? [] : [{ kpi: 'rundle', entity: 'acme', band, row: 0 }],
    revision,
  };
}

export function assessmentForSubjectIn(
  band: 'advanced' | 'intermediate' | 'novice' | null,
): Assessment {
  if (band === 'advanced') {
    return {
      kpi: 'rundle',
      name: 'Rundle',
      advanced_count: 1,
      novice_count: 0,
      competence: 'advanced',
      competence_label: 'Advanced Core Competence',
      strategy: 'table_stakes',
      strategy_label: 'Table Stakes',
      recommendation: {
        action: 'maintain',
        guidance:
          "Maintain investment. Don't stop innovating or accelerating here as competitors will continue to invest.",
      },
      highlight: false,
    };
  }
  if (band === 'novice') {
    return {
      kpi: 'rundle',
      name: 'Rundle',
      advanced_count: 0,
      novice_count: 1,
      competence: 'novice',
      competence_label: 'Novice/Not on Radar',
      strategy: 'not_applicable',
      strategy_label: 'NA',
      recommendation: {
        action: 'maintain',
        guidance: "Maintain investment, don't invest in pillars that aren't applicable to your company",
      },
      highlight: false,
    };
  }
  return {
    kpi: 'rundle',
    name: 'Rundle',
    advanced_count: 0,
    novice_count: 0,
    competence: band === null ? 'unplaced' : 'intermediate',
    competence_label: band === null ? '' : 'Intermediate, progress made, needs improvement',
    strategy: 'not_applicable',
    strategy_label: 'NA',
    recommendation:
      band === null
        ? {
            action: 'maintain',
            guidance:
              "Maintain investment, don't invest in pillars that aren't applicable to your company",
          }
        : {
            action: 'decrease',
            guidance: 'Decrease investment unless you think this is truly a differentiator',
          },
    highlight: false,
  };
}

export function reportForSubjectIn(
  band: 'advanced' | 'intermediate' | 'novice' | null,
  revision: number,
): Report {
  return { grid_revision: revision, assessments: [assessmentForSubjectIn(band)], warnings: [] };
}
