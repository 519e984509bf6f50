/** Client-side session state: mask/mode guards, slider clamps, the
 * constrained camera, page flow, and event logging.
 *
 * The UI holds no authoritative scoring state; goal checks and help text go
 * through the CoreBridge, and scores only ever travel as opaque log
 * payloads.
 */

import { taskById } from './bundle';
import { CoreBridge } from './core';
import { NdjsonLogger } from './log';
import {
  BundleJson,
  ControlEventJson,
  ControlMaskJson,
  ELEVATION_RANGE,
  HELP_REQUEST,
  M_RANGE,
  R_RANGE,
  SET_M1,
  SET_M2,
  SET_R1,
  SET_R2,
  ScriptStepJson,
  TaskJson,
  TaskStateJson,
  TOGGLE_CROSS_SECTION,
  VIEW_DOWN,
  VIEW_LEFT,
  VIEW_RIGHT,
  VIEW_STEP,
  VIEW_UP,
} from './types';

export type Page = 'tutorial' | 'play' | 'solution' | 'session_complete';

const clamp = (x: number, lo: number, hi: number) => Math.min(Math.max(x, lo), hi);

export interface DispatchResult {
  applied: boolean;
}

export class UiSession {
  page: Page = 'tutorial';
  task: TaskJson;
  state: TaskStateJson;
  private taskStartedMs = 0;
  readonly completedTasks = new Set<string>();

  constructor(
    public bundle: BundleJson,
    public core: CoreBridge,
    public logger: NdjsonLogger | null = null,
  ) {
    this.task = taskById(bundle, bundle.task_order[0]);
    this.state = this.freshState(this.task);
  }

  private freshState(task: TaskJson): TaskStateJson {
    return {
      task_id: task.task_id,
      plane: { ...task.initial_plane },
      camera: { ...task.initial_camera },
      cross_section_visible: false,
      mode: 'play',
      completed: false,
    };
  }

  mask(): ControlMaskJson {
    if (this.page === 'tutorial') {
      // The tutorial exercises every control on the practice shape.
      return {
        move_sliders: true,
        rotate_sliders: true,
        view_left_right: true,
        view_up_down: true,
        cross_section_toggle: true,
      };
    }
    return this.task.controls;
  }

  tutorialShapeId(): string {
    return this.bundle.tutorial_shape_id;
  }

  currentShapeId(): string {
    return this.page === 'tutorial' ? this.tutorialShapeId() : this.task.shape_id;
  }

  /** Leave the tutorial and load Level 1 Task 1. */
  startTraining(tMs: number): void {
    if (this.page !== 'tutorial') return;
    this.loadTask(this.bundle.task_order[0], tMs);
  }

  loadTask(taskId: string, tMs: number): void {
    this.task = taskById(this.bundle, taskId);
    this.state = this.freshState(this.task);
    this.page = 'play';
    this.taskStartedMs = tMs;
    this.logger?.append(tMs, taskId, 'task_loaded', {});
  }

  /** Apply one control gesture.  Frozen or hidden controls are ignored — no
   * state change and nothing logged. */
  dispatch(ev: ControlEventJson, tMs: number): DispatchResult {
    const mask = this.mask();
    const st = this.state;
    if (st.mode === 'solution') return { applied: false };
    switch (ev.kind) {
      case SET_M1:
      case SET_M2: {
        if (!mask.move_sliders) return { applied: false };
        const v = clamp(ev.value ?? 0, -M_RANGE, M_RANGE);
        if (ev.kind === SET_M1) st.plane.m1 = v;
        else st.plane.m2 = v;
        break;
      }
      case SET_R1:
      case SET_R2: {
        if (!mask.rotate_sliders) return { applied: false };
        const v = clamp(ev.value ?? 0, -R_RANGE, R_RANGE);
        if (ev.kind === SET_R1) st.plane.r1 = v;
        else st.plane.r2 = v;
        break;
      }
      case VIEW_LEFT:
      case VIEW_RIGHT: {
        if (!mask.view_left_right) return { applied: false };
        const step = ev.kind === VIEW_LEFT ? -VIEW_STEP : VIEW_STEP;
        st.camera.azimuth = (((st.camera.azimuth + step) % 360) + 360) % 360;
        break;
      }
      case VIEW_UP:
      case VIEW_DOWN: {
        if (!mask.view_up_down) return { applied: false };
        const step = ev.kind === VIEW_UP ? VIEW_STEP : -VIEW_STEP;
        st.camera.elevation = clamp(st.camera.elevation + step, -ELEVATION_RANGE, ELEVATION_RANGE);
        break;
      }
      case TOGGLE_CROSS_SECTION: {
        if (!mask.cross_section_toggle) return { applied: false };
        st.cross_section_visible = !st.cross_section_visible;
        break;
      }
      default:
        return { applied: false };
    }
    if (this.page !== 'tutorial') {
      const payload = ev.value !== undefined ? { value: ev.value } : {};
      this.logger?.append(tMs, st.task_id, ev.kind, payload);
    }
    return { applied: true };
  }

  /** Ask the core for problem-dependent help; logs the request. */
  requestHelp(tMs: number): string {
    if (this.state.mode !== 'play') return '';
    if (this.page !== 'tutorial') {
      this.logger?.append(tMs, this.state.task_id, HELP_REQUEST, {});
    }
    return this.core.hint(this.state);
  }

  /** Freeze controls, move to the solution page; scoring happens core-side
   * and only flows into the log as an opaque payload. */
  completeTask(tMs: number): void {
    if (this.page !== 'play' || this.state.mode !== 'play') return;
    const payload = this.core.completeTask(this.state, tMs - this.taskStartedMs);
    this.state.mode = 'solution';
    this.state.completed = true;
    this.completedTasks.add(this.state.task_id);
    this.page = 'solution';
    this.logger?.append(tMs, this.state.task_id, 'task_completed', payload);
  }

  showAnswer(tMs: number): ScriptStepJson[] {
    if (this.page !== 'solution') return [];
    this.logger?.append(tMs, this.state.task_id, 'show_answer', {});
    return this.task.solution;
  }

  nextTask(tMs: number): void {
    if (this.page !== 'solution') return;
    const order = this.bundle.task_order;
    const idx = order.indexOf(this.task.task_id);
    if (idx + 1 < order.length) {
      this.loadTask(order[idx + 1], tMs);
    } else {
      this.logger?.append(tMs, this.task.task_id, 'session_end', {});
      this.page = 'session_complete';
    }
  }
}
