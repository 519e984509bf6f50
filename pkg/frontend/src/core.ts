/** The embedding boundary: synchronous calls into the compiled core.
 *
 * The UI forwards state documents (TaskStateJson) and receives plain text or
 * opaque log payloads back; it never interprets scores.  Deployments back
 * this with the core compiled to WebAssembly or a synchronous bridge; tests
 * use the stub.
 */

import { TaskStateJson } from './types';

export interface CoreBridge {
  /** Problem-dependent help text for the current state. */
  hint(state: TaskStateJson): string;

  /** Score the final state core-side; returns the opaque payload the UI
   * appends to the session log (never rendered). */
  completeTask(state: TaskStateJson, elapsedMs: number): Record<string, unknown>;
}

export class StubCore implements CoreBridge {
  hint(state: TaskStateJson): string {
    return `Keep adjusting the plane for ${state.task_id}.`;
  }

  completeTask(_state: TaskStateJson, elapsedMs: number): Record<string, unknown> {
    return { elapsed_ms: elapsedMs, points: 0, satisfied: false };
  }
}
