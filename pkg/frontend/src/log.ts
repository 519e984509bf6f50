/** Newline-delimited JSON session log emission (append-only). */

import { SCHEMA_VERSION } from './types';

export class NdjsonLogger {
  private lines: string[] = [];
  private lastT = -Infinity;

  constructor(public bundleHash: string) {
    this.lines.push(
      JSON.stringify({
        bundle_hash: bundleHash,
        kind: 'header',
        schema_version: SCHEMA_VERSION,
      }),
    );
  }

  append(t: number, taskId: string | null, kind: string, payload: Record<string, unknown> = {}): void {
    if (t < this.lastT) throw new Error(`timestamp ${t} earlier than ${this.lastT}`);
    this.lastT = t;
    this.lines.push(JSON.stringify({ kind, payload, t, task_id: taskId }));
  }

  get eventCount(): number {
    return this.lines.length - 1;
  }

  text(): string {
    return this.lines.join('\n') + '\n';
  }
}
