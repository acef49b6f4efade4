// Session flow: one source of truth (the server), one render callback.
// Every state transition is a serialized API round-trip; a stale-revision
// conflict resolves by refetching everything rather than replaying.

import { ApiError } from './api.js';
import type { Api } from './api.js';
import { dropMutation } from './state.js';
import type { Band, GridDocument, MutationBody, Report, WhatIfOutcome } from './types.js';

export interface SandboxState {
  mutation: MutationBody;
  outcome: WhatIfOutcome;
}

export interface SessionState {
  sessionId: string;
  doc: GridDocument;
  report: Report;
  sandbox: SandboxState | null;
}

export type Notice = { kind: 'info' | 'error'; text: string };

export class SessionController {
  private state: SessionState | null = null;

  constructor(
    private readonly api: Api,
    private readonly onChange: (state: SessionState | null) => void,
    private readonly notify: (notice: Notice) => void = () => {},
  ) {}

  current(): SessionState | null {
    return this.state;
  }

  async loadDocument(documentText: string): Promise<boolean> {
    try {
      const created = await this.api.createSession(documentText);
      const [doc, report] = await Promise.all([
        this.api.getGrid(created.id),
        this.api.getReport(created.id),
      ]);
      this.state = { sessionId: created.id, doc, report, sandbox: null };
      this.onChange(this.state);
      return true;
    } catch (error) {
      this.state = null;
      this.onChange(null);
      this.notify({ kind: 'error', text: describe(error, 'could not load the grid') });
      return false;
    }
  }

  // A chip landed on (kpi, band, row). In sandbox mode this previews the
  // outcome; otherwise it commits against the current revision.
  async drop(kpiId: string, entityId: string, band: Band, row: number, sandbox: boolean): Promise<void> {
    if (!this.state) return;
    const mutation = dropMutation(this.state.doc, kpiId, entityId, band, row);
    if (sandbox) {
      await this.preview(mutation);
    } else {
      await this.commit(mutation);
    }
  }

  async unplace(kpiId: string, entityId: string, sandbox: boolean): Promise<void> {
    if (!this.state) return;
    const mutation: MutationBody = { op: 'unplace', kpi: kpiId, entity: entityId };
    if (sandbox) {
      await this.preview(mutation);
    } else {
      await this.commit(mutation);
    }
  }

  async preview(mutation: MutationBody): Promise<void> {
    if (!this.state) return;
    try {
      const outcome = await this.api.whatIf(this.state.sessionId, mutation);
      this.state = { ...this.state, sandbox: { mutation, outcome } };
      this.onChange(this.state);
    } catch (error) {
      this.notify({ kind: 'error', text: describe(error, 'what-if rejected') });
    }
  }

  async applySandbox(): Promise<void> {
    if (!this.state?.sandbox) return;
    const mutation = this.state.sandbox.mutation;
    this.state = { ...this.state, sandbox: null };
    await this.commit(mutation);
  }

  discardSandbox(): void {
    if (!this.state) return;
    this.state = { ...this.state, sandbox: null };
    this.onChange(this.state);
  }

  private async commit(mutation: MutationBody): Promise<void> {
    if (!this.state) return;
    const { sessionId, doc } = this.state;
    try {
      await this.api.mutate(sessionId, mutation, doc.revision);
      await this.resync();
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        // Someone else moved first: adopt the server's state; the user re-drags.
        await this.resync();
        this.notify({ kind: 'info', text: 'grid changed elsewhere — board resynced' });
      } else {
        // Illegal move: the board snaps back simply by re-rendering unchanged state.
        this.onChange(this.state);
        this.notify({ kind: 'error', text: describe(error, 'move rejected') });
      }
    }
  }

  // Refetch the document and report; any open preview is stale now, drop it.
  private async resync(): Promise<void> {
    if (!this.state) return;
    const { sessionId } = this.state;
    const [doc, report] = await Promise.all([
      this.api.getGrid(sessionId),
      this.api.getReport(sessionId),
    ]);
    this.state = { sessionId, doc, report, sandbox: null };
    this.onChange(this.state);
  }
}

function describe(error: unknown, fallback: string): string {
  if (error instanceof ApiError) {
    const details = error.violations.map((v) => `${v.code}: ${v.message}`).join('; ');
    return details || `${error.code}: ${error.message}`;
  }
  return error instanceof Error ? error.message : fallback;
}
