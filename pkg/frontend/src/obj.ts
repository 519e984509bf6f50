/** Wavefront OBJ parsing; `g` group names carry the part labels. */

import { TriangleMesh } from './geometry';

export function parseObj(text: string): TriangleMesh {
  const positions: number[] = [];
  const indices: number[] = [];
  const parts: string[] = [];
  let group = 'body';
  for (const raw of text.split('\n')) {
    const line = raw.trim();
    if (!line || line.startsWith('#')) continue;
    const tok = line.split(/\s+/);
    if (tok[0] === 'v') {
      positions.push(Number(tok[1]), Number(tok[2]), Number(tok[3]));
    } else if (tok[0] === 'g') {
      group = tok[1] ?? 'body';
    } else if (tok[0] === 'f') {
      const idx = tok.slice(1).map((t) => Number(t.split('/')[0]) - 1);
      for (let k = 1; k + 1 < idx.length; k++) {
        indices.push(idx[0], idx[k], idx[k + 1]);
        parts.push(group);
      }
    }
  }
  if (positions.length === 0 || indices.length === 0) {
    throw new Error('OBJ contains no geometry');
  }
  return new TriangleMesh(
    Float64Array.from(positions),
    Uint32Array.from(indices),
    parts,
  );
}
