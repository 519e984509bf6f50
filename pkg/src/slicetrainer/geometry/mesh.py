"""Triangle-mesh and plane primitives shared by slicing and clipping."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DegeneratePlane, NonWatertightMesh

# Tolerances used throughout the geometric kernel.
UNIT_NORMAL_TOL = 1e-9
ON_PLANE_TOL = 1e-9
DEGENERATE_AREA = 1e-12
PLANE_SHIFT_FACTOR = 1e-7  # of the bounding-box diagonal, per degeneracy shift


@dataclass
class Plane:
    """An oriented plane given by a point on it and a unit normal."""

    origin: np.ndarray
    normal: np.ndarray

    def __post_init__(self):
        self.origin = np.asarray(self.origin, dtype=np.float64).reshape(3)
        self.normal = np.asarray(self.normal, dtype=np.float64).reshape(3)

    def require_unit_normal(self):
        if abs(np.linalg.norm(self.normal) - 1.0) > UNIT_NORMAL_TOL:
            raise DegeneratePlane(f"normal has length {np.linalg.norm(self.normal)!r}")

    def signed_distance(self, points: np.ndarray) -> np.ndarray:
        pts = np.asarray(points, dtype=np.float64)
        return (pts - self.origin) @ self.normal

    def shifted(self, delta: float) -> "Plane":
        return Plane(self.origin + delta * self.normal, self.normal.copy())

    def basis(self) -> tuple[np.ndarray, np.ndarray]:
        """Deterministic orthonormal in-plane frame (u, v) with u x v = normal."""
        n = self.normal
        k = np.zeros(3)
        k[int(np.argmin(np.abs(n)))] = 1.0
        u = np.cross(k, n)
        u /= np.linalg.norm(u)
        v = np.cross(n, u)
        return u, v

    def to_dict(self) -> dict:
        return {"origin": [float(c) for c in self.origin],
                "normal": [float(c) for c in self.normal]}

    @classmethod
    def from_dict(cls, d: dict) -> "Plane":
        return cls(np.array(d["origin"], dtype=float), np.array(d["normal"], dtype=float))


@dataclass
class LabeledMesh:
    """Watertight triangle mesh whose triangles carry semantic part labels.

    vertices : (n, 3) float64
    triangles : (m, 3) int, consistent outward winding
    part_of : (m,) str, one label per triangle
    part_set : declared labels; every part_of entry must be one of these
    """

    vertices: np.ndarray
    triangles: np.ndarray
    part_of: np.ndarray
    part_set: tuple[str, ...] = ("body",)

    def __post_init__(self):
        self.vertices = np.ascontiguousarray(self.vertices, dtype=np.float64).reshape(-1, 3)
        self.triangles = np.ascontiguousarray(self.triangles, dtype=np.int64).reshape(-1, 3)
        self.part_of = np.asarray(self.part_of, dtype=str).reshape(-1)
        self.part_set = tuple(self.part_set)

    # --- derived quantities ---

    def triangle_corners(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        v = self.vertices
        f = self.triangles
        return v[f[:, 0]], v[f[:, 1]], v[f[:, 2]]

    def triangle_areas(self) -> np.ndarray:
        a, b, c = self.triangle_corners()
        return 0.5 * np.linalg.norm(np.cross(b - a, c - a), axis=1)

    def surface_area(self) -> float:
        return float(self.triangle_areas().sum())

    def triangle_centroids(self) -> np.ndarray:
        a, b, c = self.triangle_corners()
        return (a + b + c) / 3.0

    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        return self.vertices.min(axis=0), self.vertices.max(axis=0)

    def bbox_diagonal(self) -> float:
        lo, hi = self.bounds()
        return float(np.linalg.norm(hi - lo))

    def signed_volume(self) -> float:
        a, b, c = self.triangle_corners()
        return float(np.einsum("ij,ij->i", a, np.cross(b, c)).sum() / 6.0)

    def undirected_edges(self) -> tuple[np.ndarray, np.ndarray]:
        """Unique undirected edges and their incidence counts."""
        f = self.triangles
        e = np.concatenate([f[:, [0, 1]], f[:, [1, 2]], f[:, [2, 0]]])
        e = np.sort(e, axis=1)
        return np.unique(e, axis=0, return_counts=True)

    def euler_characteristic(self) -> int:
        edges, _ = self.undirected_edges()
        return int(len(self.vertices) - len(edges) + len(self.triangles))

    def genus(self) -> int:
        return (2 - self.euler_characteristic()) // 2

    # --- validation ---

    def validate(self, check_degenerate: bool = True) -> "LabeledMesh":
        """Raise if the watertightness, winding, or label invariants fail."""
        if len(self.part_of) != len(self.triangles):
            raise NonWatertightMesh("part_of length does not match triangle count")
        unknown = set(self.part_of) - set(self.part_set)
        if unknown:
            raise NonWatertightMesh(f"labels outside declared part set: {sorted(unknown)}")
        _, counts = self.undirected_edges()
        if not np.all(counts == 2):
            bad = int((counts != 2).sum())
            raise NonWatertightMesh(f"{bad} edges without exactly 2 incident triangles")
        # Consistent winding: each directed edge must appear exactly once.
        f = self.triangles
        d = np.concatenate([f[:, [0, 1]], f[:, [1, 2]], f[:, [2, 0]]])
        keys = d[:, 0].astype(np.int64) * len(self.vertices) + d[:, 1]
        if len(np.unique(keys)) != len(keys):
            raise NonWatertightMesh("inconsistent triangle winding (repeated directed edge)")
        if check_degenerate and bool((self.triangle_areas() <= DEGENERATE_AREA).any()):
            raise NonWatertightMesh("degenerate (near zero-area) triangles present")
        return self

    # --- transforms ---

    def transformed(self, rotation: np.ndarray | None = None,
                    translation: np.ndarray | None = None) -> "LabeledMesh":
        """Rigidly transformed copy; labels and connectivity are shared."""
        v = self.vertices
        if rotation is not None:
            v = v @ np.asarray(rotation, dtype=float).T
        if translation is not None:
            v = v + np.asarray(translation, dtype=float)
        return LabeledMesh(v, self.triangles.copy(), self.part_of.copy(), self.part_set)


def resolve_plane(mesh: LabeledMesh, plane: Plane) -> Plane:
    """Return a plane with no mesh vertex within ON_PLANE_TOL of it.

    If any vertex sits on the input plane, the plane is offset along its
    normal by PLANE_SHIFT_FACTOR x bounding-box diagonal, repeatedly if
    needed.  Deterministic, and invisible at UI scale.
    """
    plane.require_unit_normal()
    shift = PLANE_SHIFT_FACTOR * max(mesh.bbox_diagonal(), 1.0)
    current = plane
    for _ in range(64):
        d = current.signed_distance(mesh.vertices)
        if float(np.abs(d).min()) >= ON_PLANE_TOL:
            return current
        current = current.shifted(shift)
    raise DegeneratePlane("could not resolve vertex-on-plane degeneracy")
