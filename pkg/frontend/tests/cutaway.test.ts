/** Cut-away rendering: the cross-section toggle swaps the full mesh for the
 * capped clip mesh (black-and-white cap) within one frame, and back. */

import { describe, expect, it } from 'vitest';

import { BODY_MATERIAL, CAP_MATERIAL } from '../src/index';
import { makeApp, hourglass } from './helpers';

describe('cut-away rendering', () => {
  it('full mesh plus translucent plane quad when the toggle is off', () => {
    const { app } = makeApp();
    app.startTraining(0);
    const scene = app.scene();
    expect(scene.kind).toBe('full');
    expect(scene.triangles.length).toBe(hourglass.triangles.length);
    expect(scene.planeQuad).not.toBeNull();
    expect(scene.planeQuad!.opacity).toBeLessThan(1);
    expect(scene.materials.every((m) => m === BODY_MATERIAL)).toBe(true);
  });

  it('toggling on swaps in the capped clip mesh within one frame', () => {
    const { app } = makeApp();
    app.startTraining(0);
    app.toggleCrossSection(500);
    const scene = app.scene(); // first frame after the toggle
    expect(scene.kind).toBe('cutaway');
    const capCount = scene.materials.filter((m) => m === CAP_MATERIAL).length;
    expect(capCount).toBeGreaterThan(0);
    expect(scene.materials.length).toBeGreaterThan(capCount); // body remains
    expect(scene.planeQuad).toBeNull();
  });

  it('cap triangles lie on the slicing plane', () => {
    const { app } = makeApp();
    app.startTraining(0);
    app.gesture({ kind: 'set_m1', value: 0.4 }, 100);
    app.toggleCrossSection(200);
    const scene = app.scene();
    for (let t = 0; t < scene.materials.length; t++) {
      if (scene.materials[t] !== CAP_MATERIAL) continue;
      for (let c = 0; c < 3; c++) {
        const v = scene.triangles[3 * t + c];
        expect(Math.abs(scene.positions[3 * v + 1] - 0.4)).toBeLessThan(1e-6);
      }
    }
  });

  it('toggling off restores the full mesh', () => {
    const { app } = makeApp();
    app.startTraining(0);
    app.toggleCrossSection(500);
    expect(app.scene().kind).toBe('cutaway');
    app.toggleCrossSection(600);
    const scene = app.scene();
    expect(scene.kind).toBe('full');
    expect(scene.triangles.length).toBe(hourglass.triangles.length);
    expect(scene.positions).toBe(hourglass.vertices); // same buffers, no copy
  });

  it('camera honors azimuth/elevation with +Y up', () => {
    const { app } = makeApp();
    app.startTraining(0);
    for (let i = 0; i < 6; i++) app.gesture({ kind: 'view_left' }, 100 + i);
    const scene = app.scene();
    expect(scene.camera.up).toEqual([0, 1, 0]);
    // azimuth -90: eye on the -X side
    expect(scene.camera.eye[0]).toBeLessThan(0);
    expect(Math.abs(scene.camera.eye[2])).toBeLessThan(1e-9);
  });
});
