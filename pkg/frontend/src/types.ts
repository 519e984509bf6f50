/** JSON contracts shared with the core (task bundle, state documents, log). */

export interface PlaneStateJson {
  m1: number;
  m2: number;
  r1: number;
  r2: number;
}

export interface CameraStateJson {
  azimuth: number;
  elevation: number;
  distance: number;
}

export interface ControlMaskJson {
  move_sliders: boolean;
  rotate_sliders: boolean;
  view_left_right: boolean;
  view_up_down: boolean;
  cross_section_toggle: boolean;
}

export interface ControlEventJson {
  kind: string;
  value?: number;
}

export interface ScriptStepJson {
  event: ControlEventJson;
  dwell_ms: number;
}

export interface HelpRuleJson {
  rule_id: string;
  text: string;
}

export interface TaskJson {
  task_id: string;
  level: number;
  difficulty: number;
  shape_id: string;
  prompt: string;
  initial_plane: PlaneStateJson;
  initial_camera: CameraStateJson;
  controls: ControlMaskJson;
  goal: { kind: string; params: Record<string, unknown> };
  help_rules: HelpRuleJson[];
  solution: ScriptStepJson[];
}

export interface ShapeSpecJson {
  shape_id: string;
  radial_segments: number;
  axial_segments: number;
  seed: number;
  part_set: string[];
}

export interface BundleJson {
  schema_version: number;
  task_order: string[];
  tutorial_shape_id: string;
  tasks: TaskJson[];
  shapes: ShapeSpecJson[];
  bundle_hash: string;
}

/** Snapshot document passed over the embedding boundary. */
export interface TaskStateJson {
  task_id: string;
  plane: PlaneStateJson;
  camera: CameraStateJson;
  cross_section_visible: boolean;
  mode: 'play' | 'solution';
  completed: boolean;
}

export const SCHEMA_VERSION = 1;

// Control event kinds (identical to the core's wire names).
export const SET_M1 = 'set_m1';
export const SET_M2 = 'set_m2';
export const SET_R1 = 'set_r1';
export const SET_R2 = 'set_r2';
export const VIEW_LEFT = 'view_left';
export const VIEW_RIGHT = 'view_right';
export const VIEW_UP = 'view_up';
export const VIEW_DOWN = 'view_down';
export const TOGGLE_CROSS_SECTION = 'toggle_cross_section';
export const HELP_REQUEST = 'help_request';

export const M_RANGE = 1.2;
export const R_RANGE = 90.0;
export const ELEVATION_RANGE = 85.0;
export const VIEW_STEP = 15.0;

export type Vec3 = [number, number, number];
