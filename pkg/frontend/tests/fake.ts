// A scripted stand-in for the tgrid service. It enforces the same contract
// the real service does — revision check before apply, structured errors —
// but performs no classification: every report/what-if answer is a canned
// snapshot supplied by the test.

import { ApiError } from '../src/api.js';
import type { Api, CreatedSession } from '../src/api.js';
import type {
  GridDocument,
  LintWarning,
  MutationBody,
  Report,
  WhatIfOutcome,
} from '../src/types.js';

export interface Snapshot {
  doc: GridDocument;
  report: Report;
}

const clone = <T>(value: T): T => JSON.parse(JSON.stringify(value)) as T;

export class FakeApi implements Api {
  calls: string[] = [];
  private index = 0;

  // Each successful mutate() advances to the next snapshot. What-if answers
  // are served from a queue and never advance the committed state.
  constructor(
    private readonly snapshots: Snapshot[],
    private readonly whatIfQueue: WhatIfOutcome[] = [],
    private readonly lint: LintWarning[] = [],
  ) {}

  private get current(): Snapshot {
    return this.snapshots[this.index];
  }

  async createSession(documentText: string): Promise<CreatedSession> {
    this.calls.push('create');
    JSON.parse(documentText); // unparseable input is a test bug, not a 400 script
    return { id: 'session-1', revision: this.current.doc.revision };
  }

  async getGrid(_id: string): Promise<GridDocument> {
    this.calls.push('getGrid');
    return clone(this.current.doc);
  }

  async mutate(_id: string, mutation: MutationBody, expectedRevision: number): Promise<number> {
    this.calls.push(`mutate:${mutation.op}:${mutation.kpi}:${mutation.entity}`);
    if (expectedRevision !== this.current.doc.revision) {
      throw new ApiError(
        409,
        'REVISION_MISMATCH',
        `expected_revision ${expectedRevision} does not match current revision ${this.current.doc.revision}`,
      );
    }
    if (this.index + 1 >= this.snapshots.length) {
      throw new ApiError(422, 'DUP_CELL', 'scripted rejection', [
        { code: 'DUP_CELL', message: 'target cell is occupied', kpi: mutation.kpi, entity: mutation.entity },
      ]);
    }
    this.index += 1;
    return this.current.doc.revision;
  }

  async getReport(_id: string): Promise<Report> {
    this.calls.push('getReport');
    return clone(this.current.report);
  }

  async whatIf(_id: string, mutation: MutationBody): Promise<WhatIfOutcome> {
    this.calls.push(`whatIf:${mutation.op}:${mutation.kpi}:${mutation.entity}`);
    const next = this.whatIfQueue.shift();
    if (!next) {
      throw new ApiError(422, 'UNKNOWN_REF', 'scripted what-if rejection');
    }
    return clone(next);
  }

  async getLint(_id: string): Promise<LintWarning[]> {
    this.calls.push('getLint');
    return clone(this.lint);
  }

  // Simulate another tab committing: jump the server state forward so the
  // next mutate sees a stale revision.
  advanceExternally(): void {
    if (this.index + 1 >= this.snapshots.length) throw new Error('no snapshot to advance to');
    this.index += 1;
  }
}
