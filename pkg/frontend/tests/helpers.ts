import { readFileSync } from 'node:fs';

import { StubCore, NdjsonLogger, TrainerApp, mountSession, parseObj, TriangleMesh } from '../src/index';

export const bundleText = readFileSync(
  new URL('../fixtures/bundle.json', import.meta.url), 'utf-8');

const hourglass = parseObj(readFileSync(
  new URL('../fixtures/hourglass_32.obj', import.meta.url), 'utf-8'));
const capsule = parseObj(readFileSync(
  new URL('../fixtures/capsule_32.obj', import.meta.url), 'utf-8'));

/** Low-res meshes are fine for UI tests; shapes we did not export fall back
 * to the hourglass (control-panel behavior never depends on geometry). */
export function fixtureMeshes(shapeId: string): TriangleMesh {
  if (shapeId === 'tutorial_capsule') return capsule;
  return hourglass;
}

export function makeApp(withLog = true): { app: TrainerApp; log: NdjsonLogger } {
  const bundle = JSON.parse(bundleText);
  const log = new NdjsonLogger(bundle.bundle_hash);
  const app = mountSession(bundleText, fixtureMeshes, new StubCore(), withLog ? log : null);
  return { app, log };
}

export { hourglass, capsule };
