/** render_frame: the displayed scene for a task state.
 *
 * Cross-section off: the full shape plus a translucent plane quad.
 * Cross-section on: the clip-and-cap mesh with cap triangles in the
 * black-and-white cut-face material.  The swap is synchronous — one call,
 * one frame.
 */

import { clipAndCap, BODY_MATERIAL, CAP_MATERIAL, planeFromPose, TriangleMesh } from './geometry';
import { TaskStateJson, Vec3 } from './types';

export interface SceneState {
  kind: 'full' | 'cutaway';
  positions: Float64Array;
  triangles: Uint32Array;
  materials: string[]; // per triangle
  planeQuad: { origin: Vec3; normal: Vec3; halfExtent: number; opacity: number } | null;
  camera: { eye: Vec3; target: Vec3; up: Vec3 };
}

export function cameraEye(state: TaskStateJson): Vec3 {
  const az = (state.camera.azimuth * Math.PI) / 180;
  const el = (state.camera.elevation * Math.PI) / 180;
  const d = state.camera.distance;
  return [d * Math.sin(az) * Math.cos(el), d * Math.sin(el), d * Math.cos(az) * Math.cos(el)];
}

export function renderFrame(state: TaskStateJson, mesh: TriangleMesh): SceneState {
  const camera = { eye: cameraEye(state), target: [0, 0, 0] as Vec3, up: [0, 1, 0] as Vec3 };
  const plane = planeFromPose(state.plane);
  if (!state.cross_section_visible) {
    return {
      kind: 'full',
      positions: mesh.vertices,
      triangles: mesh.triangles,
      materials: new Array(mesh.triangleCount).fill(BODY_MATERIAL),
      planeQuad: { origin: plane.origin, normal: plane.normal, halfExtent: 1.5, opacity: 0.35 },
      camera,
    };
  }
  const cut = clipAndCap(mesh, plane, 'negative');
  return {
    kind: 'cutaway',
    positions: cut.mesh.vertices,
    triangles: cut.mesh.triangles,
    materials: cut.isCap.map((c) => (c ? CAP_MATERIAL : BODY_MATERIAL)),
    planeQuad: null,
    camera,
  };
}
