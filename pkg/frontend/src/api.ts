// Typed client for the tgrid service. Everything the UI knows about a grid
// comes back through these calls.

import type {
  GridDocument,
  LintWarning,
  MutationBody,
  Report,
  Violation,
  WhatIfOutcome,
} from './types.js';

export interface CreatedSession {
  id: string;
  revision: number;
}

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly violations: Violation[];

  constructor(status: number, code: string, message: string, violations: Violation[] = []) {
    super(message);
    this.name = 'ApiError';
    this.status = status;
    this.code = code;
    this.violations = violations;
  }
}

// The surface main.ts depends on; tests substitute a scripted fake.
export interface Api {
  createSession(documentText: string): Promise<CreatedSession>;
  getGrid(id: string): Promise<GridDocument>;
  mutate(id: string, mutation: MutationBody, expectedRevision: number): Promise<number>;
  getReport(id: string): Promise<Report>;
  whatIf(id: string, mutation: MutationBody): Promise<WhatIfOutcome>;
  getLint(id: string): Promise<LintWarning[]>;
}

const raise = async (response: Response): Promise<never> => {
  let code = 'HTTP_' + response.status;
  let message = response.statusText || 'request failed';
  let violations: Violation[] = [];
  try {
    const body = await response.json();
    if (typeof body.code === 'string') code = body.code;
    if (typeof body.message === 'string') message = body.message;
    if (Array.isArray(body.violations)) violations = body.violations;
  } catch {
    // non-JSON error body; keep the HTTP-level description
  }
  throw new ApiError(response.status, code, message, violations);
};

const asJson = async <T>(response: Response): Promise<T> => {
  if (!response.ok) await raise(response);
  return (await response.json()) as T;
};

export class HttpApi implements Api {
  constructor(private readonly base: string = '') {}

  async createSession(documentText: string): Promise<CreatedSession> {
    const response = await fetch(`${this.base}/v1/grids`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: documentText,
    });
    return asJson<CreatedSession>(response);
  }

  async getGrid(id: string): Promise<GridDocument> {
    return asJson<GridDocument>(await fetch(`${this.base}/v1/grids/${id}`));
  }

  async mutate(id: string, mutation: MutationBody, expectedRevision: number): Promise<number> {
    const response = await fetch(`${this.base}/v1/grids/${id}/mutations`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ ...mutation, expected_revision: expectedRevision }),
    });
    const result = await asJson<{ revision: number }>(response);
    return result.revision;
  }

  async getReport(id: string): Promise<Report> {
    return asJson<Report>(await fetch(`${this.base}/v1/grids/${id}/report`));
  }

  async whatIf(id: string, mutation: MutationBody): Promise<WhatIfOutcome> {
    const response = await fetch(`${this.base}/v1/grids/${id}/what-if`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(mutation),
    });
    return asJson<WhatIfOutcome>(response);
  }

  async getLint(id: string): Promise<LintWarning[]> {
    const result = await asJson<{ warnings: LintWarning[] }>(
      await fetch(`${this.base}/v1/grids/${id}/lint`),
    );
    return result.warnings;
  }
}
