/** Thin three.js binding: turns a SceneState into renderable objects.
 *
 * Geometry and materials only — attach the returned group to any
 * THREE.Scene and render with a WebGLRenderer in the browser.
 */

import * as THREE from 'three';

import { BODY_MATERIAL, CAP_MATERIAL } from './geometry';
import { SceneState } from './scene';

export function buildSceneGroup(scene: SceneState): THREE.Group {
  const group = new THREE.Group();
  group.add(buildMesh(scene));
  if (scene.planeQuad) {
    group.add(buildPlaneQuad(scene.planeQuad));
  }
  return group;
}

function buildMesh(scene: SceneState): THREE.Mesh {
  const geometry = new THREE.BufferGeometry();
  geometry.setAttribute('position',
    new THREE.Float32BufferAttribute(Float32Array.from(scene.positions), 3));

  // Group triangles by material so the cap renders with the cut-face look.
  const order: number[] = [];
  const groups: Array<{ start: number; count: number; materialIndex: number }> = [];
  for (const [matIndex, matId] of [BODY_MATERIAL, CAP_MATERIAL].entries()) {
    const start = order.length;
    for (let t = 0; t < scene.materials.length; t++) {
      if (scene.materials[t] === matId) {
        order.push(scene.triangles[3 * t], scene.triangles[3 * t + 1], scene.triangles[3 * t + 2]);
      }
    }
    if (order.length > start) {
      groups.push({ start, count: order.length - start, materialIndex: matIndex });
    }
  }
  geometry.setIndex(order);
  for (const g of groups) geometry.addGroup(g.start, g.count, g.materialIndex);
  geometry.computeVertexNormals();

  const body = new THREE.MeshStandardMaterial({ color: 0x9aa7b8, flatShading: true });
  const cap = new THREE.MeshBasicMaterial({ color: 0xffffff });
  cap.name = CAP_MATERIAL; // black-and-white cut-face texture slot
  body.name = BODY_MATERIAL;
  return new THREE.Mesh(geometry, [body, cap]);
}

function buildPlaneQuad(quad: NonNullable<SceneState['planeQuad']>): THREE.Mesh {
  const geometry = new THREE.PlaneGeometry(2 * quad.halfExtent, 2 * quad.halfExtent);
  const material = new THREE.MeshBasicMaterial({
    color: 0x3377cc,
    transparent: true,
    opacity: quad.opacity,
    side: THREE.DoubleSide,
  });
  const mesh = new THREE.Mesh(geometry, material);
  const normal = new THREE.Vector3(...quad.normal);
  mesh.quaternion.setFromUnitVectors(new THREE.Vector3(0, 0, 1), normal.normalize());
  mesh.position.set(...quad.origin);
  return mesh;
}

export function applyCamera(camera: THREE.PerspectiveCamera, scene: SceneState): void {
  camera.position.set(...scene.camera.eye);
  camera.up.set(...scene.camera.up);
  camera.lookAt(...scene.camera.target);
}
