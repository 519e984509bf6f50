/** Trainer application: wires the bundle, meshes, core bridge, session, and
 * presentation together. */

import { loadBundle } from './bundle';
import { CoreBridge } from './core';
import { UiSession } from './engine';
import { TriangleMesh } from './geometry';
import { NdjsonLogger } from './log';
import { PanelNode, renderPanel } from './panel';
import { SolutionPlayback } from './playback';
import { renderFrame, SceneState } from './scene';
import { BundleJson, ControlEventJson, HELP_REQUEST, TOGGLE_CROSS_SECTION } from './types';
import { buildViewModel, ViewModel } from './viewmodel';

export type MeshProvider = (shapeId: string) => TriangleMesh;

export class TrainerApp {
  session: UiSession;
  playback: SolutionPlayback | null = null;
  /** Final-state viewport capture per completed task, for the host to
   * rasterize or archive alongside the core's JSON+SVG snapshot. */
  readonly finalScenes = new Map<string, SceneState>();
  private helpText = '';

  constructor(
    public bundle: BundleJson,
    private meshes: MeshProvider,
    core: CoreBridge,
    public logger: NdjsonLogger | null = null,
  ) {
    this.session = new UiSession(bundle, core, logger);
  }

  // -- user gestures --------------------------------------------------------

  startTraining(tMs: number): void {
    this.session.startTraining(tMs);
    this.helpText = '';
  }

  gesture(ev: ControlEventJson, tMs: number): boolean {
    if (ev.kind === HELP_REQUEST) {
      this.helpText = this.session.requestHelp(tMs);
      return this.helpText !== '';
    }
    return this.session.dispatch(ev, tMs).applied;
  }

  toggleCrossSection(tMs: number): boolean {
    return this.gesture({ kind: TOGGLE_CROSS_SECTION }, tMs);
  }

  completeTask(tMs: number): void {
    if (this.session.page === 'play') {
      this.finalScenes.set(this.session.state.task_id, this.scene());
    }
    this.session.completeTask(tMs);
    this.playback = null;
    this.helpText = '';
  }

  showAnswer(tMs: number): SolutionPlayback | null {
    const script = this.session.showAnswer(tMs);
    if (script.length === 0) return null;
    this.playback = new SolutionPlayback(this.session.task, script);
    return this.playback;
  }

  nextTask(tMs: number): void {
    this.session.nextTask(tMs);
    this.playback = null;
    this.helpText = '';
  }

  // -- presentation ---------------------------------------------------------

  viewModel(): ViewModel {
    return buildViewModel(this.session, this.helpText);
  }

  panel(): PanelNode {
    return renderPanel(this.viewModel());
  }

  /** The displayed 3D scene; during answer playback the animated display
   * state takes over the viewport. */
  scene(): SceneState {
    const state = this.playback ? this.playback.displayState : this.session.state;
    const mesh = this.meshes(this.session.currentShapeId());
    return renderFrame(state, mesh);
  }
}

/** Entry point: verify the bundle, then present the tutorial first. */
export function mountSession(
  bundleJson: string,
  meshes: MeshProvider,
  core: CoreBridge,
  logger: NdjsonLogger | null = null,
): TrainerApp {
  const bundle = loadBundle(bundleJson); // throws BundleVersionError: blocking screen
  return new TrainerApp(bundle, meshes, core, logger);
}

export { BundleVersionError, loadBundle } from './bundle';
export { StubCore } from './core';
export type { CoreBridge } from './core';
export { UiSession } from './engine';
export {
  BODY_MATERIAL,
  CAP_MATERIAL,
  TriangleMesh,
  clipAndCap,
  planeFromPose,
  sliceLoops,
} from './geometry';
export { NdjsonLogger } from './log';
export { parseObj } from './obj';
export { collectText, findById, renderPanel } from './panel';
export type { PanelNode } from './panel';
export { SolutionPlayback } from './playback';
export { renderFrame } from './scene';
export type { SceneState } from './scene';
export { buildViewModel } from './viewmodel';
export type { ViewModel } from './viewmodel';
