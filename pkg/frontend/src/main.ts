// DOM wiring for the analyst workspace: board, report panel, sandbox.

import { HttpApi } from './api.js';
import { SessionController } from './controller.js';
import type { Notice, SessionState } from './controller.js';
import { BAND_TITLES, blankDocument, buildBoard, reportRows } from './state.js';
import type { Band, Delta } from './types.js';

const api = new HttpApi();

const el = <T extends HTMLElement>(id: string): T => {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
};

const boardEl = el<HTMLDivElement>('board');
const reportEl = el<HTMLDivElement>('report');
const sandboxEl = el<HTMLDivElement>('sandbox');
const lintEl = el<HTMLDivElement>('lint-badges');
const revisionEl = el<HTMLSpanElement>('revision');
const noticeEl = el<HTMLDivElement>('notice');
const fileInput = el<HTMLInputElement>('grid-file');
const blankButton = el<HTMLButtonElement>('blank-grid');
const sandboxToggle = el<HTMLInputElement>('sandbox-toggle');

let noticeTimer: number | undefined;

function showNotice(notice: Notice): void {
  noticeEl.textContent = notice.text;
  noticeEl.className = `notice notice--${notice.kind} notice--visible`;
  window.clearTimeout(noticeTimer);
  noticeTimer = window.setTimeout(() => {
    noticeEl.className = 'notice';
  }, 4000);
}

const controller = new SessionController(api, render, showNotice);

function sandboxMode(): boolean {
  return sandboxToggle.checked;
}

// ---------------------------------------------------------------- rendering

function render(state: SessionState | null): void {
  if (!state) {
    boardEl.replaceChildren(emptyHint('Load a grid document or start a blank grid.'));
    reportEl.replaceChildren();
    sandboxEl.replaceChildren();
    lintEl.replaceChildren();
    revisionEl.textContent = '';
    return;
  }
  revisionEl.textContent = `revision ${state.doc.revision}`;
  renderBoard(state);
  renderReport(state);
  renderSandbox(state);
}

function emptyHint(text: string): HTMLElement {
  const hint = document.createElement('p');
  hint.className = 'hint';
  hint.textContent = text;
  return hint;
}

function renderBoard(state: SessionState): void {
  const board = buildBoard(state.doc);
  boardEl.replaceChildren();

  const roster = document.createElement('div');
  roster.className = 'roster';
  const rosterTitle = document.createElement('h2');
  rosterTitle.textContent = 'Entities';
  roster.appendChild(rosterTitle);
  for (const entry of board.roster) {
    roster.appendChild(chip(entry.entityId, entry.name, entry.subject, null));
  }
  const removeZone = document.createElement('div');
  removeZone.className = 'remove-zone';
  removeZone.textContent = 'Drag here to remove from a column';
  removeZone.addEventListener('dragover', (event) => event.preventDefault());
  removeZone.addEventListener('drop', (event) => {
    event.preventDefault();
    const payload = dragPayload(event);
    if (payload && payload.fromKpi) {
      void controller.unplace(payload.fromKpi, payload.entityId, sandboxMode());
    }
  });
  roster.appendChild(removeZone);
  boardEl.appendChild(roster);

  const columns = document.createElement('div');
  columns.className = 'columns';
  for (const column of board.columns) {
    const section = document.createElement('section');
    section.className = 'column';

    const header = document.createElement('header');
    const title = document.createElement('h3');
    title.textContent = column.name;
    header.appendChild(title);
    section.appendChild(header);

    for (const lane of column.lanes) {
      const laneEl = document.createElement('div');
      laneEl.className = `lane lane--${lane.band}`;
      const laneTitle = document.createElement('div');
      laneTitle.className = 'lane__title';
      laneTitle.textContent = BAND_TITLES[lane.band];
      laneEl.appendChild(laneTitle);

      for (const cell of lane.cells) {
        const cellEl = document.createElement('div');
        cellEl.className = 'cell' + (cell.entityId ? ' cell--occupied' : ' cell--free');
        cellEl.dataset.kpi = column.kpiId;
        cellEl.dataset.band = cell.band;
        cellEl.dataset.row = String(cell.row);
        cellEl.addEventListener('dragover', (event) => {
          event.preventDefault();
          cellEl.classList.add('cell--over');
        });
        cellEl.addEventListener('dragleave', () => cellEl.classList.remove('cell--over'));
        cellEl.addEventListener('drop', (event) => {
          event.preventDefault();
          cellEl.classList.remove('cell--over');
          const payload = dragPayload(event);
          if (!payload) return;
          void controller.drop(
            column.kpiId,
            payload.entityId,
            cell.band as Band,
            cell.row,
            sandboxMode(),
          );
        });
        if (cell.entityId && cell.entityName !== null) {
          cellEl.appendChild(chip(cell.entityId, cell.entityName, cell.subject, column.kpiId));
        }
        laneEl.appendChild(cellEl);
      }
      section.appendChild(laneEl);
    }
    columns.appendChild(section);
  }
  boardEl.appendChild(columns);
}

interface DragPayload {
  entityId: string;
  fromKpi: string | null;
}

function chip(entityId: string, name: string, subject: boolean, fromKpi: string | null): HTMLElement {
  const node = document.createElement('span');
  node.className = 'chip' + (subject ? ' chip--subject' : '');
  node.textContent = name;
  if (subject) node.title = 'subject of the analysis';
  node.draggable = true;
  node.addEventListener('dragstart', (event) => {
    const payload: DragPayload = { entityId, fromKpi };
    event.dataTransfer?.setData('application/json', JSON.stringify(payload));
    node.classList.add('chip--dragging');
  });
  node.addEventListener('dragend', () => node.classList.remove('chip--dragging'));
  return node;
}

function dragPayload(event: DragEvent): DragPayload | null {
  const raw = event.dataTransfer?.getData('application/json');
  if (!raw) return null;
  try {
    const parsed = JSON.parse(raw);
    if (typeof parsed.entityId === 'string') {
      return { entityId: parsed.entityId, fromKpi: parsed.fromKpi ?? null };
    }
  } catch {
    // fall through: not one of our chips
  }
  return null;
}

function renderReport(state: SessionState): void {
  reportEl.replaceChildren();

  lintEl.replaceChildren();
  for (const warning of state.report.warnings) {
    const badge = document.createElement('span');
    badge.className = 'badge badge--lint';
    badge.textContent = `${warning.code} ${warning.observed}/${warning.limit}`;
    badge.title = 'above the comfortable chunk size — advisory only';
    lintEl.appendChild(badge);
  }

  const table = document.createElement('table');
  table.className = 'report-table';
  const head = table.createTHead().insertRow();
  for (const label of ['KPI', 'Competence', 'Strategy', 'Recommendation', '']) {
    const th = document.createElement('th');
    th.textContent = label;
    head.appendChild(th);
  }
  const body = table.createTBody();
  for (const row of reportRows(state.report)) {
    const tr = body.insertRow();
    tr.dataset.kpi = row.kpiId;
    if (row.highlight) tr.className = 'report-row--highlight';
    tr.insertCell().textContent = row.name;
    tr.insertCell().textContent = row.competenceLabel;
    tr.insertCell().textContent = row.strategyLabel;
    const rec = tr.insertCell();
    rec.textContent = row.guidance ? `${row.action}: ${row.guidance}` : '';
    rec.className = 'report-guidance';
    const badgeCell = tr.insertCell();
    if (row.highlight) {
      const badge = document.createElement('span');
      badge.className = 'badge badge--blind-spot';
      badge.textContent = 'blind spot';
      badgeCell.appendChild(badge);
    }
  }
  reportEl.appendChild(table);
}

function renderSandbox(state: SessionState): void {
  sandboxEl.replaceChildren();
  if (!state.sandbox) {
    if (sandboxMode()) {
      sandboxEl.appendChild(
        emptyHint('Sandbox armed: the next drop previews its effect without committing.'),
      );
    }
    return;
  }

  const { mutation, outcome } = state.sandbox;
  const heading = document.createElement('h3');
  const where = mutation.band !== undefined ? ` → ${mutation.band} #${mutation.row}` : '';
  heading.textContent = `What if: ${mutation.op} ${mutation.entity} on ${mutation.kpi}${where}`;
  sandboxEl.appendChild(heading);

  if (outcome.deltas.length === 0) {
    sandboxEl.appendChild(emptyHint('No derived values would change.'));
  } else {
    const list = document.createElement('ul');
    list.className = 'delta-list';
    for (const delta of outcome.deltas) {
      const item = document.createElement('li');
      item.textContent = `${delta.kpi} ${delta.field}: ${deltaText(delta, 'before')} → ${deltaText(delta, 'after')}`;
      list.appendChild(item);
    }
    sandboxEl.appendChild(list);
  }

  const actions = document.createElement('div');
  actions.className = 'sandbox-actions';
  const apply = document.createElement('button');
  apply.id = 'sandbox-apply';
  apply.textContent = 'Apply';
  apply.addEventListener('click', () => void controller.applySandbox());
  const discard = document.createElement('button');
  discard.id = 'sandbox-discard';
  discard.textContent = 'Discard';
  discard.addEventListener('click', () => controller.discardSandbox());
  actions.append(apply, discard);
  sandboxEl.appendChild(actions);
}

function deltaText(delta: Delta, side: 'before' | 'after'): string {
  const value = delta[side];
  if (value === null || value === undefined) return '—';
  if (typeof value === 'object') {
    const rec = value as { action?: string; guidance?: string };
    return rec.action ? `[${rec.action}] ${rec.guidance ?? ''}`.trim() : JSON.stringify(value);
  }
  return String(value) || '(blank)';
}

// ------------------------------------------------------------------ wiring

fileInput.addEventListener('change', () => {
  const file = fileInput.files?.[0];
  if (!file) return;
  void file.text().then((text) => controller.loadDocument(text));
  fileInput.value = '';
});

blankButton.addEventListener('click', () => {
  const name = window.prompt('Name of the company under analysis?', 'My Company');
  if (name === null) return;
  void controller.loadDocument(JSON.stringify(blankDocument(name.trim() || 'My Company')));
});

sandboxToggle.addEventListener('change', () => render(controller.current()));

render(null);
