"""Half-space clipping with cap triangulation.

The kept half keeps its original triangles, straddling triangles are split
along the crossing edges (crossing points are shared by edge index, so the
result stays watertight), and each cross-section region is closed with cap
triangles produced by ear clipping with holes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .mesh import LabeledMesh, Plane
from .slicing import _nesting_parents, _slice_raw, signed_area_2d


@dataclass
class CutawayMesh:
    """A clipped watertight mesh; is_cap flags the cross-section triangles."""

    mesh: LabeledMesh
    is_cap: np.ndarray

    def cap_area(self) -> float:
        areas = self.mesh.triangle_areas()
        return float(areas[self.is_cap].sum())

    def surface_area(self) -> float:
        return self.mesh.surface_area()


# ---------------------------------------------------------------------------
# Ear clipping with holes (linked-list earcut)
# ---------------------------------------------------------------------------

_AREA_EPS = 1e-14


class _Node:
    __slots__ = ("i", "x", "y", "prev", "next")

    def __init__(self, i: int, x: float, y: float):
        self.i = i
        self.x = x
        self.y = y
        self.prev: "_Node" = self
        self.next: "_Node" = self


def _insert_node(i: int, x: float, y: float, last: _Node | None) -> _Node:
    p = _Node(i, x, y)
    if last is None:
        return p
    p.next = last.next
    p.prev = last
    last.next.prev = p
    last.next = p
    return p


def _remove_node(p: _Node):
    p.next.prev = p.prev
    p.prev.next = p.next


def _linked_ring(pts: np.ndarray, idx: np.ndarray, ccw: bool) -> _Node:
    forward = (signed_area_2d(pts) > 0) == ccw
    order = range(len(pts)) if forward else range(len(pts) - 1, -1, -1)
    last = None
    for k in order:
        last = _insert_node(int(idx[k]), float(pts[k, 0]), float(pts[k, 1]), last)
    return last


def _cross(a: _Node, b: _Node, c: _Node) -> float:
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def _in_triangle(ax, ay, bx, by, cx, cy, px, py) -> bool:
    return ((cx - px) * (ay - py) - (ax - px) * (cy - py) >= 0
            and (ax - px) * (by - py) - (bx - px) * (ay - py) >= 0
            and (bx - px) * (cy - py) - (cx - px) * (by - py) >= 0)


def _is_ear(ear: _Node) -> bool:
    a, b, c = ear.prev, ear, ear.next
    if _cross(a, b, c) <= _AREA_EPS:
        return False
    p = c.next
    while p is not a:
        if (_in_triangle(a.x, a.y, b.x, b.y, c.x, c.y, p.x, p.y)
                and _cross(p.prev, p, p.next) <= 0):
            return False
        p = p.next
    return True


def _leftmost(head: _Node) -> _Node:
    best = head
    p = head.next
    while p is not head:
        if p.x < best.x or (p.x == best.x and p.y < best.y):
            best = p
        p = p.next
    return best


def _find_hole_bridge(hole: _Node, outer: _Node) -> _Node | None:
    """Outer-ring vertex visible from the hole's leftmost vertex (ray to -x)."""
    hx, hy = hole.x, hole.y
    qx = -np.inf
    m: _Node | None = None
    p = outer
    while True:
        if (p.y >= hy) != (p.next.y >= hy) and p.next.y != p.y:
            x = p.x + (hy - p.y) * (p.next.x - p.x) / (p.next.y - p.y)
            if x <= hx and x > qx:
                qx = x
                m = p if p.x < p.next.x else p.next
                if x == hx:
                    return m
        p = p.next
        if p is outer:
            break
    if m is None:
        return None
    # Prefer a reflex vertex inside the candidate triangle with minimal angle.
    stop = m
    mx, my = m.x, m.y
    tan_min = np.inf
    p = m
    while True:
        if (hx >= p.x >= mx and hx != p.x
                and _in_triangle(hx if hy < my else qx, hy, mx, my,
                                 qx if hy < my else hx, hy, p.x, p.y)):
            tan = abs(hy - p.y) / (hx - p.x)
            if (tan < tan_min or (tan == tan_min and p.x > m.x)) and _cross(p.prev, p, p.next) <= 0:
                m = p
                tan_min = tan
        p = p.next
        if p is stop:
            break
    return m


def _split_ring(a: _Node, b: _Node) -> _Node:
    """Bridge nodes a (outer) and b (hole) with a pair of duplicate nodes."""
    a2 = _Node(a.i, a.x, a.y)
    b2 = _Node(b.i, b.x, b.y)
    an = a.next
    bp = b.prev
    a.next = b
    b.prev = a
    a2.next = an
    an.prev = a2
    b2.next = a2
    a2.prev = b2
    bp.next = b2
    b2.prev = bp
    return b2


def triangulate_with_holes(rings_pts: list[np.ndarray],
                           rings_idx: list[np.ndarray]) -> list[tuple[int, int, int]]:
    """Triangulate a polygon (first ring, made CCW) with holes (made CW).

    Returns triangles as triples of the provided global indices, counter-
    clockwise in the same 2D frame.  Every input vertex appears on the cap
    boundary exactly as given, which keeps clipped meshes watertight.
    """
    outer = _linked_ring(rings_pts[0], rings_idx[0], ccw=True)
    holes = [_linked_ring(p, i, ccw=False) for p, i in zip(rings_pts[1:], rings_idx[1:])]
    hole_left = sorted((_leftmost(h) for h in holes), key=lambda n: (n.x, n.y))
    for h in hole_left:
        bridge = _find_hole_bridge(h, outer)
        if bridge is None:
            raise ValueError("hole is not inside the outer ring")
        _split_ring(bridge, h)

    tris: list[tuple[int, int, int]] = []
    ear = outer
    stop = outer
    while ear.prev is not ear.next:
        if _is_ear(ear):
            tris.append((ear.prev.i, ear.i, ear.next.i))
            nxt = ear.next
            _remove_node(ear)
            ear = nxt.next
            stop = ear
            continue
        ear = ear.next
        if ear is stop:
            forced = _force_cut(ear)
            if forced is None:
                break
            tris.append(forced[0])
            ear = forced[1]
            stop = forced[1]
    if ear.prev is not ear.next:
        tris.append((ear.prev.i, ear.i, ear.next.i))
    return tris


def _force_cut(head: _Node) -> tuple[tuple[int, int, int], _Node] | None:
    """Cut a remaining convex corner when no strict ear exists (collinear
    chains); prefers corners whose triangle contains no other vertex."""
    best: _Node | None = None
    best_area = -np.inf
    best_blocked: _Node | None = None
    best_blocked_area = -np.inf
    p = head
    while True:
        area = _cross(p.prev, p, p.next)
        if area >= 0:
            blocked = False
            q = p.next.next
            while q is not p.prev:
                if (_in_triangle(p.prev.x, p.prev.y, p.x, p.y, p.next.x, p.next.y, q.x, q.y)
                        and not _same_xy(q, p.prev) and not _same_xy(q, p) and not _same_xy(q, p.next)):
                    blocked = True
                    break
                q = q.next
            if not blocked and area > best_area:
                best, best_area = p, area
            elif blocked and area > best_blocked_area:
                best_blocked, best_blocked_area = p, area
        p = p.next
        if p is head:
            break
    cut = best if best is not None else best_blocked
    if cut is None:
        return None
    tri = (cut.prev.i, cut.i, cut.next.i)
    nxt = cut.next
    _remove_node(cut)
    return tri, nxt


def _same_xy(a: _Node, b: _Node) -> bool:
    return a.x == b.x and a.y == b.y


# ---------------------------------------------------------------------------
# clip_and_cap
# ---------------------------------------------------------------------------

def clip_and_cap(mesh: LabeledMesh, plane: Plane, keep_side: str = "negative") -> CutawayMesh:
    """Clip a watertight mesh to one side of the plane and cap the section.

    keep_side 'positive' keeps the half the normal points into.  Straddling
    triangles are split; cap regions honor loop nesting (holes stay open).
    The result is watertight with cap triangles flagged.
    """
    if keep_side not in ("positive", "negative"):
        raise ValueError(f"keep_side must be 'positive' or 'negative', got {keep_side!r}")
    want_positive = keep_side == "positive"

    data = _slice_raw(mesh, plane)
    d = data.distances
    keep_v = (d > 0.0) if want_positive else (d < 0.0)

    v = mesh.vertices
    f = mesh.triangles
    tri_keep = keep_v[f]
    n_keep = tri_keep.sum(axis=1)

    kept_old = np.flatnonzero(keep_v)
    remap = np.full(len(v), -1, dtype=np.int64)
    remap[kept_old] = np.arange(len(kept_old))
    n_edge = len(data.edge_points)
    new_vertices = np.concatenate([v[kept_old], data.edge_points]) if n_edge \
        else v[kept_old].copy()
    edge_base = len(kept_old)

    edge_of: dict[tuple[int, int], int] = {}
    for e, (a, b) in enumerate(np.asarray(data.edge_vertices)):
        edge_of[(int(a), int(b))] = e
        edge_of[(int(b), int(a))] = e

    out_tris: list[tuple[int, int, int]] = []
    out_labels: list[str] = []

    full_rows = np.flatnonzero(n_keep == 3)
    for row in full_rows:
        t = f[row]
        out_tris.append((remap[t[0]], remap[t[1]], remap[t[2]]))
        out_labels.append(mesh.part_of[row])

    for row in np.flatnonzero((n_keep == 1) | (n_keep == 2)):
        corners = f[row]
        flags = tri_keep[row]
        poly: list[int] = []
        for c in range(3):
            v0, v1 = int(corners[c]), int(corners[(c + 1) % 3])
            if flags[c]:
                poly.append(int(remap[v0]))
            if flags[c] != flags[(c + 1) % 3]:
                poly.append(edge_base + edge_of[(v0, v1)])
        for k in range(1, len(poly) - 1):
            out_tris.append((poly[0], poly[k], poly[k + 1]))
            out_labels.append(mesh.part_of[row])

    n_surface = len(out_tris)

    # Cap regions: even-depth loops filled, their children left open.
    if data.loops_edges:
        u, w = data.plane.basis()
        frame = np.stack([u, w], axis=1)
        pts2 = [(data.edge_points[e] - data.plane.origin) @ frame
                for e in data.loops_edges]
        parents, depths = _nesting_parents(pts2)
        loop_idx = [e + edge_base for e in data.loops_edges]
        # Cap winding: CCW in (u, w) means normal +n; outward from the kept
        # material is +n when keeping the negative side.
        flip = want_positive
        for i in range(len(pts2)):
            if depths[i] % 2 != 0:
                continue
            hole_ids = [j for j, p in enumerate(parents) if p == i]
            rings_pts = [pts2[i]] + [pts2[j] for j in hole_ids]
            rings_idx = [loop_idx[i]] + [loop_idx[j] for j in hole_ids]
            cap = triangulate_with_holes(rings_pts, rings_idx)
            labels, counts = np.unique(mesh.part_of[data.loops_tris[i]], return_counts=True)
            cap_label = str(labels[np.argmax(counts)])
            for (a, b, c) in cap:
                out_tris.append((a, c, b) if flip else (a, b, c))
                out_labels.append(cap_label)

    if not out_tris:
        empty = LabeledMesh(np.empty((0, 3)), np.empty((0, 3), dtype=np.int64),
                            np.empty(0, dtype=str), mesh.part_set)
        return CutawayMesh(empty, np.empty(0, dtype=bool))

    triangles = np.asarray(out_tris, dtype=np.int64)
    # Drop vertices that ended up unreferenced (kept-side verts of dropped tris
    # cannot occur, but edge vertices of non-kept crossings can).
    used = np.unique(triangles)
    compact = np.full(len(new_vertices), -1, dtype=np.int64)
    compact[used] = np.arange(len(used))
    result = LabeledMesh(new_vertices[used], compact[triangles],
                         np.asarray(out_labels, dtype=str), mesh.part_set)
    is_cap = np.zeros(len(triangles), dtype=bool)
    is_cap[n_surface:] = True
    return CutawayMesh(result, is_cap)
