/** Step-by-step solution playback honoring the script's dwell times.
 *
 * The animation drives a display-only state cloned from the task's initial
 * pose; the trainee's frozen controls are untouched.  Repeatable any number
 * of times.
 */

import { ControlEventJson, ScriptStepJson, TaskJson, TaskStateJson } from './types';
import {
  ELEVATION_RANGE,
  M_RANGE,
  R_RANGE,
  SET_M1,
  SET_M2,
  SET_R1,
  SET_R2,
  TOGGLE_CROSS_SECTION,
  VIEW_DOWN,
  VIEW_LEFT,
  VIEW_RIGHT,
  VIEW_STEP,
  VIEW_UP,
} from './types';

const clamp = (x: number, lo: number, hi: number) => Math.min(Math.max(x, lo), hi);

/** Apply a script event to a display state, bypassing masks (the script is
 * core-authored and trusted). */
export function applyScriptEvent(state: TaskStateJson, ev: ControlEventJson): void {
  switch (ev.kind) {
    case SET_M1: state.plane.m1 = clamp(ev.value ?? 0, -M_RANGE, M_RANGE); break;
    case SET_M2: state.plane.m2 = clamp(ev.value ?? 0, -M_RANGE, M_RANGE); break;
    case SET_R1: state.plane.r1 = clamp(ev.value ?? 0, -R_RANGE, R_RANGE); break;
    case SET_R2: state.plane.r2 = clamp(ev.value ?? 0, -R_RANGE, R_RANGE); break;
    case VIEW_LEFT:
    case VIEW_RIGHT: {
      const step = ev.kind === VIEW_LEFT ? -VIEW_STEP : VIEW_STEP;
      state.camera.azimuth = (((state.camera.azimuth + step) % 360) + 360) % 360;
      break;
    }
    case VIEW_UP:
    case VIEW_DOWN: {
      const step = ev.kind === VIEW_UP ? VIEW_STEP : -VIEW_STEP;
      state.camera.elevation = clamp(state.camera.elevation + step, -ELEVATION_RANGE, ELEVATION_RANGE);
      break;
    }
    case TOGGLE_CROSS_SECTION:
      state.cross_section_visible = !state.cross_section_visible;
      break;
  }
}

export class SolutionPlayback {
  private elapsed = 0;
  private applied = 0;
  readonly displayState: TaskStateJson;

  constructor(private task: TaskJson, private script: ScriptStepJson[]) {
    this.displayState = this.initialState();
  }

  private initialState(): TaskStateJson {
    return {
      task_id: this.task.task_id,
      plane: { ...this.task.initial_plane },
      camera: { ...this.task.initial_camera },
      cross_section_visible: false,
      mode: 'solution',
      completed: true,
    };
  }

  /** Advance the animation clock; applies every step whose dwell has
   * elapsed.  Returns the number of steps applied by this call. */
  advance(dtMs: number): number {
    this.elapsed += dtMs;
    let cum = 0;
    let appliedNow = 0;
    for (let i = 0; i < this.script.length; i++) {
      cum += this.script[i].dwell_ms;
      if (i < this.applied) continue;
      if (cum <= this.elapsed) {
        applyScriptEvent(this.displayState, this.script[i].event);
        this.applied++;
        appliedNow++;
      }
    }
    return appliedNow;
  }

  get finished(): boolean {
    return this.applied >= this.script.length;
  }

  /** Rewind to the initial pose so the answer can play again. */
  restart(): void {
    this.elapsed = 0;
    this.applied = 0;
    const fresh = this.initialState();
    this.displayState.plane = fresh.plane;
    this.displayState.camera = fresh.camera;
    this.displayState.cross_section_visible = fresh.cross_section_visible;
  }

  totalDurationMs(): number {
    return this.script.reduce((s, step) => s + step.dwell_ms, 0);
  }
}
