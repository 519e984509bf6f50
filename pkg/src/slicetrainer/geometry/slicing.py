"""Mesh-plane slicing: contour extraction, loop metrics, and nesting.

Slicing walks the crossing edges of the mesh.  Each triangle that straddles
the plane contributes exactly one segment whose endpoints live on mesh edges;
segments are chained through exact shared-edge adjacency (edges identified by
vertex-index pairs, never by floating-point point matching), so every loop of
a watertight mesh closes by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import CrossingLoops, DegenerateLoop, NonWatertightMesh
from .mesh import DEGENERATE_AREA, LabeledMesh, Plane, resolve_plane


@dataclass
class Loop:
    """Closed planar polyline; the last point connects back to the first."""

    points: np.ndarray
    is_closed: bool = True

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=np.float64).reshape(-1, 3)


@dataclass
class LoopMetrics:
    area: float
    perimeter: float
    axis_ratio: float
    centroid: np.ndarray


@dataclass(frozen=True)
class ClassifierThresholds:
    """Axis-ratio cutoffs for circle vs. oval; the gap in between is 'other'."""

    circle_max: float = 1.15
    oval_min: float = 1.30


DEFAULT_THRESHOLDS = ClassifierThresholds()


@dataclass
class CrossSection:
    """All loops of one slice with their nesting forest, metrics and parts."""

    loops: list[Loop] = field(default_factory=list)
    parent: list[int | None] = field(default_factory=list)
    metrics: list[LoopMetrics] = field(default_factory=list)
    parts: list[frozenset[str]] = field(default_factory=list)

    @property
    def loop_count(self) -> int:
        return len(self.loops)

    def roots(self) -> list[int]:
        return [i for i, p in enumerate(self.parent) if p is None]

    def depth(self, i: int) -> int:
        d = 0
        while self.parent[i] is not None:
            i = self.parent[i]
            d += 1
        return d

    def children(self, i: int) -> list[int]:
        return [j for j, p in enumerate(self.parent) if p == i]

    def total_area(self) -> float:
        return float(sum(m.area for m in self.metrics))


@dataclass
class _SliceData:
    """Raw slice: crossing-edge points plus per-loop edge/triangle provenance."""

    plane: Plane                      # effective (possibly degeneracy-shifted) plane
    distances: np.ndarray             # per-vertex signed distance to the effective plane
    edge_points: np.ndarray           # (E, 3) one intersection point per crossing edge
    edge_vertices: np.ndarray         # (E, 2) mesh vertex pair of each crossing edge
    loops_edges: list[np.ndarray]     # per loop: ordered crossing-edge indices
    loops_tris: list[np.ndarray]      # per loop: straddling triangle indices


def _slice_raw(mesh: LabeledMesh, plane: Plane) -> _SliceData:
    eff = resolve_plane(mesh, plane)
    v = mesh.vertices
    f = mesh.triangles
    d = eff.signed_distance(v)
    pos = d > 0.0
    tri_pos = pos[f]
    n_pos = tri_pos.sum(axis=1)
    rows = np.flatnonzero((n_pos > 0) & (n_pos < 3))
    if rows.size == 0:
        return _SliceData(eff, d, np.empty((0, 3)), np.empty((0, 2), dtype=np.int64), [], [])

    fs = f[rows]
    s = tri_pos[rows]
    ci = np.array([0, 1, 2])
    cj = np.array([1, 2, 0])
    crossing = s[:, ci] != s[:, cj]
    # With no vertex on the plane each straddling triangle crosses on exactly
    # two of its edges.
    if not bool(np.all(crossing.sum(axis=1) == 2)):
        raise NonWatertightMesh("triangle with crossing-edge parity != 2")

    kk, cc = np.nonzero(crossing)  # row-major: two entries per straddling row
    a = fs[kk, ci[cc]]
    b = fs[kk, cj[cc]]
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    ekey = lo * np.int64(len(v)) + hi
    ukey, inv = np.unique(ekey, return_inverse=True)
    counts = np.bincount(inv)
    if not bool(np.all(counts == 2)):
        raise NonWatertightMesh("crossing edge without exactly 2 incident triangles")
    row_edges = inv.reshape(-1, 2)

    ua = (ukey // len(v)).astype(np.int64)
    ub = (ukey % len(v)).astype(np.int64)
    da = d[ua]
    db = d[ub]
    t = da / (da - db)
    edge_points = v[ua] + t[:, None] * (v[ub] - v[ua])

    # For each crossing edge, the two straddling rows it belongs to.
    order = np.argsort(inv, kind="stable")
    edge_rows = (order // 2).reshape(-1, 2)

    visited = np.zeros(len(rows), dtype=bool)
    loops_edges: list[np.ndarray] = []
    loops_tris: list[np.ndarray] = []
    for start in range(len(rows)):
        if visited[start]:
            continue
        cyc_edges: list[int] = []
        cyc_rows: list[int] = []
        e_in = int(row_edges[start, 0])
        r = start
        while True:
            visited[r] = True
            cyc_rows.append(r)
            e0, e1 = int(row_edges[r, 0]), int(row_edges[r, 1])
            e_out = e1 if e0 == e_in else e0
            cyc_edges.append(e_out)
            ra, rb = int(edge_rows[e_out, 0]), int(edge_rows[e_out, 1])
            r = rb if ra == r else ra
            e_in = e_out
            if r == start:
                break
        loops_edges.append(np.asarray(cyc_edges, dtype=np.int64))
        loops_tris.append(rows[np.asarray(cyc_rows, dtype=np.int64)])

    return _SliceData(eff, d, edge_points, np.column_stack([ua, ub]), loops_edges, loops_tris)


def points_in_polygon(points: np.ndarray, polygon: np.ndarray) -> np.ndarray:
    """Even-odd containment of 2D points in a closed 2D polygon (vectorized)."""
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    polygon = np.asarray(polygon, dtype=float).reshape(-1, 2)
    px = points[:, 0:1]
    py = points[:, 1:2]
    x0 = polygon[None, :, 0]
    y0 = polygon[None, :, 1]
    x1 = np.roll(polygon[:, 0], -1)[None, :]
    y1 = np.roll(polygon[:, 1], -1)[None, :]
    cond = (y0 <= py) != (y1 <= py)
    with np.errstate(divide="ignore", invalid="ignore"):
        xint = x0 + (py - y0) * (x1 - x0) / (y1 - y0)
    hits = cond & (px < xint)
    return (hits.sum(axis=1) % 2).astype(bool)


def signed_area_2d(points: np.ndarray) -> float:
    x = points[:, 0]
    y = points[:, 1]
    return float(0.5 * np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _nesting_parents(pts2: list[np.ndarray]) -> tuple[list[int | None], list[int]]:
    """Containment forest over projected loops; raises CrossingLoops on overlap."""
    n = len(pts2)
    areas = [abs(signed_area_2d(p)) for p in pts2]
    by_area = sorted(range(n), key=lambda i: areas[i])
    # Loops may not partially overlap: all-or-none vertex containment.
    for i in range(n):
        for j in range(n):
            if i == j or areas[j] < areas[i]:
                continue
            inside = points_in_polygon(pts2[i], pts2[j])
            k = int(inside.sum())
            if 0 < k < len(inside):
                raise CrossingLoops(f"loops {i} and {j} cross")
    parents: list[int | None] = [None] * n
    for i in range(n):
        rep = pts2[i][0:1]
        for j in by_area:
            if j == i or areas[j] <= areas[i]:
                continue
            if bool(points_in_polygon(rep, pts2[j])[0]):
                parents[i] = j
                break
    depths = [0] * n
    for i in range(n):
        d = 0
        k = i
        while parents[k] is not None:
            k = parents[k]  # type: ignore[assignment]
            d += 1
        depths[i] = d
    return parents, depths


def compute_metrics(loop: Loop, plane: Plane) -> LoopMetrics:
    """Area, perimeter, principal-axis ratio and centroid of a closed loop.

    Everything is computed from the 3D points alone (no in-plane frame is
    involved), so the result is trivially invariant to the frame choice.
    The axis ratio is the major/minor extent ratio along the principal
    directions of the loop's point cloud.
    """
    pts = loop.points
    if len(pts) < 3:
        raise DegenerateLoop(f"loop with {len(pts)} points")
    mean = pts.mean(axis=0)
    q = pts - mean
    qn = np.roll(q, -1, axis=0)
    cr = np.cross(q, qn)
    avec = 0.5 * cr.sum(axis=0)
    area = float(np.linalg.norm(avec))
    if area <= DEGENERATE_AREA:
        raise DegenerateLoop("zero enclosed area (collinear points)")
    nhat = avec / area
    perimeter = float(np.linalg.norm(qn - q, axis=1).sum())
    w = cr @ nhat
    centroid = mean + ((q + qn) * w[:, None]).sum(axis=0) / (3.0 * w.sum())

    cov = q.T @ q
    _, evecs = np.linalg.eigh(cov)  # ascending; first column ~ plane normal
    proj_a = q @ evecs[:, 2]
    proj_b = q @ evecs[:, 1]
    ext_a = float(proj_a.max() - proj_a.min())
    ext_b = float(proj_b.max() - proj_b.min())
    minor = min(ext_a, ext_b)
    major = max(ext_a, ext_b)
    if minor <= 1e-12:
        raise DegenerateLoop("zero minor extent (collinear points)")
    return LoopMetrics(area=area, perimeter=perimeter,
                       axis_ratio=major / minor, centroid=centroid)


def classify_loop(metrics: LoopMetrics,
                  thresholds: ClassifierThresholds = DEFAULT_THRESHOLDS) -> str:
    """'circle' | 'oval' | 'other' from the axis ratio."""
    if metrics.axis_ratio <= thresholds.circle_max:
        return "circle"
    if metrics.axis_ratio >= thresholds.oval_min:
        return "oval"
    return "other"


def build_nesting(loops: list[Loop], plane: Plane) -> list[int | None]:
    """Parent index per loop (None for roots), by even-odd containment."""
    plane.require_unit_normal()
    u, v = plane.basis()
    frame = np.stack([u, v], axis=1)
    pts2 = [(lp.points - plane.origin) @ frame for lp in loops]
    parents, _ = _nesting_parents(pts2)
    return parents


def slice_mesh(mesh: LabeledMesh, plane: Plane,
               thresholds: ClassifierThresholds = DEFAULT_THRESHOLDS) -> CrossSection:
    """Slice a watertight labeled mesh with a plane.

    Returns every closed intersection loop with metrics, per-loop part
    labels, and the containment forest.  Root loops are oriented counter-
    clockwise in the in-plane frame, nested loops alternate.
    An empty CrossSection is returned when the plane misses the mesh.
    """
    data = _slice_raw(mesh, plane)
    if not data.loops_edges:
        return CrossSection()
    loops_pts = [data.edge_points[e] for e in data.loops_edges]

    u, v = data.plane.basis()
    frame = np.stack([u, v], axis=1)
    pts2 = [(p - data.plane.origin) @ frame for p in loops_pts]
    parents, depths = _nesting_parents(pts2)

    for i, p2 in enumerate(pts2):
        ccw = signed_area_2d(p2) > 0
        want_ccw = depths[i] % 2 == 0
        if ccw != want_ccw:
            loops_pts[i] = loops_pts[i][::-1].copy()
            pts2[i] = p2[::-1].copy()

    loops = [Loop(p) for p in loops_pts]
    metrics = [compute_metrics(lp, data.plane) for lp in loops]
    parts = [frozenset(np.unique(mesh.part_of[tris]).tolist())
             for tris in data.loops_tris]
    return CrossSection(loops=loops, parent=parents, metrics=metrics, parts=parts)


def loop_parts(loop: Loop, mesh: LabeledMesh) -> frozenset[str]:
    """Part labels of the triangles whose segments compose this loop.

    The loop must come from slicing this mesh; the slice is re-derived from
    the loop's own plane fit and matched by centroid.
    """
    pts = loop.points
    mean = pts.mean(axis=0)
    q = pts - mean
    avec = 0.5 * np.cross(q, np.roll(q, -1, axis=0)).sum(axis=0)
    norm = np.linalg.norm(avec)
    if norm <= DEGENERATE_AREA:
        raise DegenerateLoop("cannot fit a plane to the loop")
    section = slice_mesh(mesh, Plane(mean, avec / norm))
    if not section.loops:
        return frozenset()
    target = compute_metrics(loop, Plane(mean, avec / norm)).centroid
    best = min(range(section.loop_count),
               key=lambda i: float(np.linalg.norm(section.metrics[i].centroid - target)))
    return section.parts[best]
