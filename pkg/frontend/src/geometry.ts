/** Mesh-plane geometry for the cut-away view.
 *
 * Mirrors the core's slicing contract: crossing edges are identified by
 * vertex-index pairs so loops close exactly on watertight meshes, straddling
 * triangles are split, and each cross-section region is capped with ear
 * clipping (holes stay open).
 */

import { PlaneStateJson, Vec3 } from './types';

const ON_PLANE_TOL = 1e-9;
const PLANE_SHIFT_FACTOR = 1e-7;

export interface PlaneOf {
  origin: Vec3;
  normal: Vec3;
}

export class TriangleMesh {
  constructor(
    public vertices: Float64Array, // 3n
    public triangles: Uint32Array, // 3m
    public parts: string[], // per triangle
  ) {}

  get triangleCount(): number {
    return this.triangles.length / 3;
  }

  vertex(i: number): Vec3 {
    return [this.vertices[3 * i], this.vertices[3 * i + 1], this.vertices[3 * i + 2]];
  }

  bboxDiagonal(): number {
    const lo = [Infinity, Infinity, Infinity];
    const hi = [-Infinity, -Infinity, -Infinity];
    for (let i = 0; i < this.vertices.length; i += 3) {
      for (let a = 0; a < 3; a++) {
        lo[a] = Math.min(lo[a], this.vertices[i + a]);
        hi[a] = Math.max(hi[a], this.vertices[i + a]);
      }
    }
    return Math.hypot(hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]);
  }

  surfaceArea(): number {
    let total = 0;
    for (let t = 0; t < this.triangleCount; t++) {
      const a = this.vertex(this.triangles[3 * t]);
      const b = this.vertex(this.triangles[3 * t + 1]);
      const c = this.vertex(this.triangles[3 * t + 2]);
      const ab = sub(b, a);
      const ac = sub(c, a);
      total += 0.5 * norm(cross(ab, ac));
    }
    return total;
  }
}

const sub = (a: Vec3, b: Vec3): Vec3 => [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
const add = (a: Vec3, b: Vec3): Vec3 => [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
const scale = (a: Vec3, s: number): Vec3 => [a[0] * s, a[1] * s, a[2] * s];
const dot = (a: Vec3, b: Vec3): number => a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
const cross = (a: Vec3, b: Vec3): Vec3 => [
  a[1] * b[2] - a[2] * b[1],
  a[2] * b[0] - a[0] * b[2],
  a[0] * b[1] - a[1] * b[0],
];
const norm = (a: Vec3): number => Math.hypot(a[0], a[1], a[2]);

/** Slider state -> plane: normal = Rz(r2).Rx(r1).(+Y), origin from m1/m2. */
export function planeFromPose(p: PlaneStateJson): PlaneOf {
  const th = (p.r1 * Math.PI) / 180;
  const ps = (p.r2 * Math.PI) / 180;
  return {
    origin: [p.m2, p.m1, 0],
    normal: [-Math.sin(ps) * Math.cos(th), Math.cos(ps) * Math.cos(th), Math.sin(th)],
  };
}

function planeBasis(n: Vec3): [Vec3, Vec3] {
  const k: Vec3 = [0, 0, 0];
  const abs = [Math.abs(n[0]), Math.abs(n[1]), Math.abs(n[2])];
  k[abs.indexOf(Math.min(...abs))] = 1;
  let u = cross(k, n);
  u = scale(u, 1 / norm(u));
  return [u, cross(n, u)];
}

/** Shift the plane off any vertex, as the core does before slicing. */
function resolvePlane(mesh: TriangleMesh, plane: PlaneOf): PlaneOf {
  const shift = PLANE_SHIFT_FACTOR * Math.max(mesh.bboxDiagonal(), 1);
  let origin = plane.origin;
  for (let iter = 0; iter < 64; iter++) {
    let minAbs = Infinity;
    for (let i = 0; i < mesh.vertices.length; i += 3) {
      const d =
        (mesh.vertices[i] - origin[0]) * plane.normal[0] +
        (mesh.vertices[i + 1] - origin[1]) * plane.normal[1] +
        (mesh.vertices[i + 2] - origin[2]) * plane.normal[2];
      minAbs = Math.min(minAbs, Math.abs(d));
    }
    if (minAbs >= ON_PLANE_TOL) return { origin, normal: plane.normal };
    origin = add(origin, scale(plane.normal, shift));
  }
  throw new Error('could not resolve vertex-on-plane degeneracy');
}

interface RawSlice {
  plane: PlaneOf;
  distances: Float64Array;
  edgePoints: Vec3[]; // one per crossing edge
  edgeIndex: Map<string, number>; // "lo,hi" vertex pair -> crossing-edge id
  loopsEdges: number[][]; // per loop: ordered crossing-edge ids
}

function sliceRaw(mesh: TriangleMesh, inputPlane: PlaneOf): RawSlice {
  const plane = resolvePlane(mesh, inputPlane);
  const nVerts = mesh.vertices.length / 3;
  const d = new Float64Array(nVerts);
  for (let i = 0; i < nVerts; i++) {
    d[i] =
      (mesh.vertices[3 * i] - plane.origin[0]) * plane.normal[0] +
      (mesh.vertices[3 * i + 1] - plane.origin[1]) * plane.normal[1] +
      (mesh.vertices[3 * i + 2] - plane.origin[2]) * plane.normal[2];
  }

  const edgeIndex = new Map<string, number>(); // "lo,hi" -> edge id
  const edgeVerts: Array<[number, number]> = [];
  const rowEdges: number[][] = []; // per straddling triangle: its 2 edge ids
  const edgeRows: number[][] = []; // per edge: the straddling rows on it

  for (let t = 0; t < mesh.triangleCount; t++) {
    const vs = [mesh.triangles[3 * t], mesh.triangles[3 * t + 1], mesh.triangles[3 * t + 2]];
    const pos = vs.map((v) => d[v] > 0);
    const nPos = pos.filter(Boolean).length;
    if (nPos === 0 || nPos === 3) continue;
    const edges: number[] = [];
    for (let c = 0; c < 3; c++) {
      const a = vs[c];
      const b = vs[(c + 1) % 3];
      if (pos[c] === pos[(c + 1) % 3]) continue;
      const key = a < b ? `${a},${b}` : `${b},${a}`;
      let e = edgeIndex.get(key);
      if (e === undefined) {
        e = edgeVerts.length;
        edgeIndex.set(key, e);
        edgeVerts.push(a < b ? [a, b] : [b, a]);
        edgeRows.push([]);
      }
      edges.push(e);
      edgeRows[e].push(rowEdges.length);
    }
    if (edges.length !== 2) throw new Error('crossing-edge parity != 2');
    rowEdges.push(edges);
  }

  const edgePoints: Vec3[] = edgeVerts.map(([a, b]) => {
    const t = d[a] / (d[a] - d[b]);
    return add(mesh.vertex(a), scale(sub(mesh.vertex(b), mesh.vertex(a)), t));
  });
  for (const rows of edgeRows) {
    if (rows.length !== 2) throw new Error('crossing edge without exactly 2 triangles');
  }

  const visited = new Array(rowEdges.length).fill(false);
  const loopsEdges: number[][] = [];
  for (let start = 0; start < rowEdges.length; start++) {
    if (visited[start]) continue;
    const cyc: number[] = [];
    let eIn = rowEdges[start][0];
    let r = start;
    for (;;) {
      visited[r] = true;
      const [e0, e1] = rowEdges[r];
      const eOut = e0 === eIn ? e1 : e0;
      cyc.push(eOut);
      const [ra, rb] = edgeRows[eOut];
      r = ra === r ? rb : ra;
      eIn = eOut;
      if (r === start) break;
    }
    loopsEdges.push(cyc);
  }
  return { plane, distances: d, edgePoints, edgeIndex, loopsEdges };
}

/** Closed intersection loops (point lists) of a plane with the mesh. */
export function sliceLoops(mesh: TriangleMesh, plane: PlaneOf): Vec3[][] {
  const raw = sliceRaw(mesh, plane);
  return raw.loopsEdges.map((edges) => edges.map((e) => raw.edgePoints[e]));
}

// --- 2D helpers -------------------------------------------------------------

function signedArea2(pts: Array<[number, number]>): number {
  let s = 0;
  for (let i = 0; i < pts.length; i++) {
    const [x0, y0] = pts[i];
    const [x1, y1] = pts[(i + 1) % pts.length];
    s += x0 * y1 - x1 * y0;
  }
  return 0.5 * s;
}

function pointInPolygon(p: [number, number], poly: Array<[number, number]>): boolean {
  let inside = false;
  for (let i = 0; i < poly.length; i++) {
    const [x0, y0] = poly[i];
    const [x1, y1] = poly[(i + 1) % poly.length];
    if (y0 <= p[1] !== y1 <= p[1]) {
      const xint = x0 + ((p[1] - y0) * (x1 - x0)) / (y1 - y0);
      if (p[0] < xint) inside = !inside;
    }
  }
  return inside;
}

function nestingParents(loops2: Array<Array<[number, number]>>): (number | null)[] {
  const areas = loops2.map((l) => Math.abs(signedArea2(l)));
  const order = areas.map((_, i) => i).sort((a, b) => areas[a] - areas[b]);
  return loops2.map((loop, i) => {
    for (const j of order) {
      if (j === i || areas[j] <= areas[i]) continue;
      if (pointInPolygon(loop[0], loops2[j])) return j;
    }
    return null;
  });
}

// --- ear clipping with holes --------------------------------------------------

interface Node {
  i: number;
  x: number;
  y: number;
  prev: Node;
  next: Node;
}

function insertNode(i: number, x: number, y: number, last: Node | null): Node {
  const p = { i, x, y } as Node;
  if (!last) {
    p.prev = p;
    p.next = p;
    return p;
  }
  p.next = last.next;
  p.prev = last;
  last.next.prev = p;
  last.next = p;
  return p;
}

function removeNode(p: Node): void {
  p.next.prev = p.prev;
  p.prev.next = p.next;
}

function linkedRing(pts: Array<[number, number]>, idx: number[], ccw: boolean): Node {
  const forward = signedArea2(pts) > 0 === ccw;
  let last: Node | null = null;
  if (forward) {
    for (let k = 0; k < pts.length; k++) last = insertNode(idx[k], pts[k][0], pts[k][1], last);
  } else {
    for (let k = pts.length - 1; k >= 0; k--) last = insertNode(idx[k], pts[k][0], pts[k][1], last);
  }
  return last!;
}

const crossN = (a: Node, b: Node, c: Node): number =>
  (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);

function inTriangle(
  ax: number, ay: number, bx: number, by: number, cx: number, cy: number,
  px: number, py: number,
): boolean {
  return (
    (cx - px) * (ay - py) - (ax - px) * (cy - py) >= 0 &&
    (ax - px) * (by - py) - (bx - px) * (ay - py) >= 0 &&
    (bx - px) * (cy - py) - (cx - px) * (by - py) >= 0
  );
}

function isEar(ear: Node): boolean {
  const a = ear.prev;
  const b = ear;
  const c = ear.next;
  if (crossN(a, b, c) <= 1e-14) return false;
  let p = c.next;
  while (p !== a) {
    if (inTriangle(a.x, a.y, b.x, b.y, c.x, c.y, p.x, p.y) && crossN(p.prev, p, p.next) <= 0) {
      return false;
    }
    p = p.next;
  }
  return true;
}

function leftmost(head: Node): Node {
  let best = head;
  let p = head.next;
  while (p !== head) {
    if (p.x < best.x || (p.x === best.x && p.y < best.y)) best = p;
    p = p.next;
  }
  return best;
}

function findHoleBridge(hole: Node, outer: Node): Node | null {
  const hx = hole.x;
  const hy = hole.y;
  let qx = -Infinity;
  let m: Node | null = null;
  let p = outer;
  do {
    if (p.y >= hy !== p.next.y >= hy && p.next.y !== p.y) {
      const x = p.x + ((hy - p.y) * (p.next.x - p.x)) / (p.next.y - p.y);
      if (x <= hx && x > qx) {
        qx = x;
        m = p.x < p.next.x ? p : p.next;
        if (x === hx) return m;
      }
    }
    p = p.next;
  } while (p !== outer);
  if (!m) return null;
  const stop = m;
  const mx = m.x;
  const my = m.y;
  let tanMin = Infinity;
  p = m;
  do {
    if (
      hx >= p.x && p.x >= mx && hx !== p.x &&
      inTriangle(hy < my ? hx : qx, hy, mx, my, hy < my ? qx : hx, hy, p.x, p.y)
    ) {
      const tan = Math.abs(hy - p.y) / (hx - p.x);
      if ((tan < tanMin || (tan === tanMin && p.x > m.x)) && crossN(p.prev, p, p.next) <= 0) {
        m = p;
        tanMin = tan;
      }
    }
    p = p.next;
  } while (p !== stop);
  return m;
}

function splitRing(a: Node, b: Node): void {
  const a2 = { i: a.i, x: a.x, y: a.y } as Node;
  const b2 = { i: b.i, x: b.x, y: b.y } as Node;
  const an = a.next;
  const bp = b.prev;
  a.next = b;
  b.prev = a;
  a2.next = an;
  an.prev = a2;
  b2.next = a2;
  a2.prev = b2;
  bp.next = b2;
  b2.prev = bp;
}

/** Triangulate outer ring (made CCW) with holes (made CW); returns triples of
 * the provided global indices, CCW in the 2D frame. */
export function triangulateWithHoles(
  ringsPts: Array<Array<[number, number]>>,
  ringsIdx: number[][],
): Array<[number, number, number]> {
  const outer = linkedRing(ringsPts[0], ringsIdx[0], true);
  const holes = ringsPts.slice(1).map((pts, k) => linkedRing(pts, ringsIdx[k + 1], false));
  const holeLeft = holes.map(leftmost).sort((a, b) => a.x - b.x || a.y - b.y);
  for (const h of holeLeft) {
    const bridge = findHoleBridge(h, outer);
    if (!bridge) throw new Error('hole is not inside the outer ring');
    splitRing(bridge, h);
  }
  const tris: Array<[number, number, number]> = [];
  let ear = outer;
  let stop = outer;
  while (ear.prev !== ear.next) {
    if (isEar(ear)) {
      tris.push([ear.prev.i, ear.i, ear.next.i]);
      const nxt = ear.next;
      removeNode(ear);
      ear = nxt.next;
      stop = ear;
      continue;
    }
    ear = ear.next;
    if (ear === stop) {
      const cut = forceCut(ear);
      if (!cut) break;
      tris.push(cut.tri);
      ear = cut.next;
      stop = cut.next;
    }
  }
  if (ear.prev !== ear.next) tris.push([ear.prev.i, ear.i, ear.next.i]);
  return tris;
}

/** Cut a remaining convex corner when no strict ear exists (collinear
 * chains); prefer corners whose triangle contains no other vertex. */
function forceCut(head: Node): { tri: [number, number, number]; next: Node } | null {
  let best: Node | null = null;
  let bestArea = -Infinity;
  let bestBlocked: Node | null = null;
  let bestBlockedArea = -Infinity;
  let p = head;
  do {
    const area = crossN(p.prev, p, p.next);
    if (area >= 0) {
      let blocked = false;
      let q = p.next.next;
      while (q !== p.prev) {
        const sameAsCorner =
          (q.x === p.prev.x && q.y === p.prev.y) ||
          (q.x === p.x && q.y === p.y) ||
          (q.x === p.next.x && q.y === p.next.y);
        if (!sameAsCorner && inTriangle(p.prev.x, p.prev.y, p.x, p.y, p.next.x, p.next.y, q.x, q.y)) {
          blocked = true;
          break;
        }
        q = q.next;
      }
      if (!blocked && area > bestArea) {
        best = p;
        bestArea = area;
      } else if (blocked && area > bestBlockedArea) {
        bestBlocked = p;
        bestBlockedArea = area;
      }
    }
    p = p.next;
  } while (p !== head);
  const cut = best ?? bestBlocked;
  if (!cut) return null;
  const tri: [number, number, number] = [cut.prev.i, cut.i, cut.next.i];
  const nxt = cut.next;
  removeNode(cut);
  return { tri, next: nxt };
}

// --- clip and cap -------------------------------------------------------------

export const CAP_MATERIAL = 'cap-black-white';
export const BODY_MATERIAL = 'body';

export interface CutawayResult {
  mesh: TriangleMesh;
  isCap: boolean[];
}

export function clipAndCap(
  mesh: TriangleMesh,
  plane: PlaneOf,
  keepSide: 'positive' | 'negative' = 'negative',
): CutawayResult {
  const raw = sliceRaw(mesh, plane);
  const d = raw.distances;
  const wantPositive = keepSide === 'positive';
  const nVerts = mesh.vertices.length / 3;

  const keep = new Array<boolean>(nVerts);
  for (let i = 0; i < nVerts; i++) keep[i] = wantPositive ? d[i] > 0 : d[i] < 0;

  const remap = new Int32Array(nVerts).fill(-1);
  const outVerts: number[] = [];
  const pushVertex = (v: Vec3): number => {
    outVerts.push(v[0], v[1], v[2]);
    return outVerts.length / 3 - 1;
  };
  for (let i = 0; i < nVerts; i++) {
    if (keep[i]) remap[i] = pushVertex(mesh.vertex(i));
  }
  const edgeBase = outVerts.length / 3;
  for (const p of raw.edgePoints) pushVertex(p);
  const edgeIdOf = raw.edgeIndex;

  const outTris: number[] = [];
  const outParts: string[] = [];
  let nSurface = 0;
  for (let t = 0; t < mesh.triangleCount; t++) {
    const vs = [mesh.triangles[3 * t], mesh.triangles[3 * t + 1], mesh.triangles[3 * t + 2]];
    const flags = vs.map((v) => keep[v]);
    const nKeep = flags.filter(Boolean).length;
    if (nKeep === 0) continue;
    if (nKeep === 3) {
      outTris.push(remap[vs[0]], remap[vs[1]], remap[vs[2]]);
      outParts.push(mesh.parts[t]);
      nSurface++;
      continue;
    }
    const poly: number[] = [];
    for (let c = 0; c < 3; c++) {
      const a = vs[c];
      const b = vs[(c + 1) % 3];
      if (flags[c]) poly.push(remap[a]);
      if (flags[c] !== flags[(c + 1) % 3]) {
        const key = a < b ? `${a},${b}` : `${b},${a}`;
        poly.push(edgeBase + edgeIdOf.get(key)!);
      }
    }
    for (let k = 1; k + 1 < poly.length; k++) {
      outTris.push(poly[0], poly[k], poly[k + 1]);
      outParts.push(mesh.parts[t]);
      nSurface++;
    }
  }

  // Caps: even-depth loops filled with their children as holes.
  if (raw.loopsEdges.length > 0) {
    const [u, w] = planeBasis(raw.plane.normal);
    const loops2: Array<Array<[number, number]>> = raw.loopsEdges.map((edges) =>
      edges.map((e) => {
        const p = sub(raw.edgePoints[e], raw.plane.origin);
        return [dot(p, u), dot(p, w)] as [number, number];
      }),
    );
    const parents = nestingParents(loops2);
    const depth = (i: number): number => {
      let dd = 0;
      let k = i;
      while (parents[k] !== null) {
        k = parents[k]!;
        dd++;
      }
      return dd;
    };
    for (let i = 0; i < loops2.length; i++) {
      if (depth(i) % 2 !== 0) continue;
      const holeIds = parents.map((p, j) => (p === i ? j : -1)).filter((j) => j >= 0);
      const ringsPts = [loops2[i], ...holeIds.map((j) => loops2[j])];
      const ringsIdx = [
        raw.loopsEdges[i].map((e) => edgeBase + e),
        ...holeIds.map((j) => raw.loopsEdges[j].map((e) => edgeBase + e)),
      ];
      const capTris = triangulateWithHoles(ringsPts, ringsIdx);
      for (const [a, b, c] of capTris) {
        if (wantPositive) outTris.push(a, c, b);
        else outTris.push(a, b, c);
        outParts.push(mesh.parts[0] ?? 'body');
      }
    }
  }

  const isCap = outParts.map((_, k) => k >= nSurface);
  return {
    mesh: new TriangleMesh(Float64Array.from(outVerts), Uint32Array.from(outTris), outParts),
    isCap,
  };
}
