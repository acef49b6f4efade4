import { describe, expect, it } from 'vitest';

import { blankDocument, buildBoard, dropMutation, placedInColumn, reportRows } from '../src/state.js';
import { docWithSubjectIn, reportForSubjectIn } from './fixtures.js';

describe('buildBoard', () => {
  it('lays out one lane per band with capacity-many cells', () => {
    const board = buildBoard(docWithSubjectIn('novice', 0));
    expect(board.columns).toHaveLength(1);
    const [column] = board.columns;
    expect(column.lanes.map((lane) => lane.band)).toEqual(['advanced', 'intermediate', 'novice']);
    expect(column.lanes.map((lane) => lane.cells.length)).toEqual([6, 2, 3]);
  });

  it('mirrors placements exactly and marks the subject chip', () => {
    const board = buildBoard(docWithSubjectIn('novice', 0));
    const noviceLane = board.columns[0].lanes[2];
    expect(noviceLane.cells[0]).toMatchObject({
      entityId: 'acme',
      entityName: 'Acme',
      subject: true,
    });
    const occupied = board.columns[0].lanes.flatMap((lane) =>
      lane.cells.filter((cell) => cell.entityId !== null),
    );
    expect(occupied).toHaveLength(1);
  });

  it('keeps the full roster and the document revision', () => {
    const board = buildBoard(docWithSubjectIn(null, 3));
    expect(board.revision).toBe(3);
    expect(board.roster.map((chip) => chip.entityId)).toEqual(['acme', 'rival']);
    expect(board.roster[0].subject).toBe(true);
  });
});

describe('dropMutation', () => {
  it('derives place for an entity new to the column', () => {
    const doc = docWithSubjectIn(null, 0);
    expect(dropMutation(doc, 'rundle', 'acme', 'advanced', 0)).toEqual({
      op: 'place',
      kpi: 'rundle',
      entity: 'acme',
      band: 'advanced',
      row: 0,
    });
  });

  it('derives move for an entity already in the column', () => {
    const doc = docWithSubjectIn('novice', 0);
    expect(placedInColumn(doc, 'rundle')).toEqual(new Set(['acme']));
    expect(dropMutation(doc, 'rundle', 'acme', 'advanced', 0).op).toBe('move');
  });
});

describe('reportRows', () => {
  it('copies server labels without recomputing anything', () => {
    const rows = reportRows(reportForSubjectIn('advanced', 1));
    expect(rows).toHaveLength(1);
    expect(rows[0]).toMatchObject({
      kpiId: 'rundle',
      competenceLabel: 'Advanced Core Competence',
      strategyLabel: 'Table Stakes',
      action: 'maintain',
      highlight: false,
    });
  });
});

describe('blankDocument', () => {
  it('builds the starter document: eight KPIs, subject only, nothing placed', () => {
    const doc = blankDocument('My Company');
    expect(doc.format).toBe('tgrid/1');
    expect(doc.kpis).toHaveLength(8);
    expect(doc.kpis[0].id).toBe('appeals-to-human-instinct');
    expect(doc.entities).toEqual([{ id: 'my-company', name: 'My Company', subject: true }]);
    expect(doc.placements).toEqual([]);
    expect(doc.bands).toEqual({ advanced: 6, intermediate: 2, novice: 3 });
    expect(doc.revision).toBe(0);
  });
});
