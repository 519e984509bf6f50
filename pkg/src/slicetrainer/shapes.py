"""Deterministic procedural generation of the training shapes.

All catalog shapes are watertight, labeled at generation time, fit the
[-1, 1]^3 box with +Y up, and are pure functions of their ShapeSpec.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidSpec
from .geometry.mesh import LabeledMesh, Plane
from .geometry.slicing import slice_mesh

SHAPE_IDS = ("hourglass", "taper", "y_branch", "potato_hole", "tutorial_capsule")

MIN_SEGMENTS = 32
MAX_SEGMENTS = 512

# Y-branch skeleton: a trunk capsule splitting at the origin into two branch
# capsules tilted +-35 degrees from +Y in the XY plane.
BRANCH_ANGLE_DEG = 35.0
TRUNK_RADIUS = 0.26
TRUNK_BOTTOM = np.array([0.0, -0.7, 0.0])
BRANCH_RADIUS = 0.155
BRANCH_LENGTH = 0.95

# Potato: a deformed torus around the +X axis.
POTATO_MAJOR = 1.0
POTATO_MINOR = 0.4
POTATO_NOISE_AMPLITUDE = 0.05
POTATO_ANISO = np.array([1.0, 0.9, 1.1])


@dataclass(frozen=True)
class ShapeSpec:
    shape_id: str
    radial_segments: int = 64
    axial_segments: int = 64
    seed: int = 0
    part_set: tuple[str, ...] = ("body",)

    def to_dict(self) -> dict:
        return {"shape_id": self.shape_id, "radial_segments": self.radial_segments,
                "axial_segments": self.axial_segments, "seed": self.seed,
                "part_set": list(self.part_set)}


@dataclass
class SweepProfile:
    """Total cross-section area sampled along an axis (a brute-force oracle)."""

    axis: np.ndarray
    offsets: np.ndarray
    areas: np.ndarray

    def min_area(self) -> float:
        nonzero = self.areas[self.areas > 0.0]
        return float(nonzero.min())

    def max_area(self) -> float:
        return float(self.areas.max())


def shape_catalog() -> list[ShapeSpec]:
    """The five canonical shapes with their default resolutions and seeds."""
    return [
        ShapeSpec("hourglass", 64, 64, 0, ("body",)),
        ShapeSpec("taper", 64, 64, 0, ("body",)),
        ShapeSpec("y_branch", 64, 64, 0, ("stem", "branch_left", "branch_right")),
        ShapeSpec("potato_hole", 96, 96, 7, ("outer_surface", "hole_surface")),
        ShapeSpec("tutorial_capsule", 48, 48, 0, ("body",)),
    ]


def catalog_spec(shape_id: str) -> ShapeSpec:
    for spec in shape_catalog():
        if spec.shape_id == shape_id:
            return spec
    raise InvalidSpec(f"unknown shape id {shape_id!r}")


# ---------------------------------------------------------------------------
# Lathe / grid builders
# ---------------------------------------------------------------------------

def _orient_outward(mesh: LabeledMesh) -> LabeledMesh:
    if mesh.signed_volume() < 0:
        mesh.triangles = mesh.triangles[:, ::-1].copy()
    return mesh


def lathe(profile_y: np.ndarray, profile_r: np.ndarray, radial_segments: int,
          part: str = "body") -> LabeledMesh:
    """Closed surface of revolution around +Y.

    The profile runs bottom to top.  Endpoints with zero radius become pole
    vertices; endpoints with positive radius are closed with a flat disk fan.
    Interior radii must be positive.
    """
    profile_y = np.asarray(profile_y, dtype=float)
    profile_r = np.asarray(profile_r, dtype=float).copy()
    profile_r[profile_r <= 1e-12] = 0.0  # snap numerical poles to exact poles
    if len(profile_y) < 2:
        raise InvalidSpec("profile needs at least 2 samples")
    if bool((profile_r[1:-1] <= 0).any()):
        raise InvalidSpec("interior profile radii must be positive")

    n = radial_segments
    phi = 2.0 * np.pi * np.arange(n) / n
    cos_p, sin_p = np.cos(phi), np.sin(phi)

    verts: list[np.ndarray] = []
    ring_index: list[int | None] = []   # start vertex of each ring, None for poles
    pole_index: list[int | None] = []
    count = 0
    for y, r in zip(profile_y, profile_r):
        if r <= 0:
            pole_index.append(count)
            ring_index.append(None)
            verts.append(np.array([[0.0, y, 0.0]]))
            count += 1
        else:
            ring_index.append(count)
            pole_index.append(None)
            ring = np.column_stack([r * cos_p, np.full(n, y), r * sin_p])
            verts.append(ring)
            count += n
    vertices = np.concatenate(verts)

    tris: list[tuple[int, int, int]] = []
    for i in range(len(profile_y) - 1):
        lo_ring, hi_ring = ring_index[i], ring_index[i + 1]
        if lo_ring is None and hi_ring is None:
            raise InvalidSpec("two consecutive poles in profile")
        if lo_ring is None:
            p = pole_index[i]
            for k in range(n):
                tris.append((p, hi_ring + k, hi_ring + (k + 1) % n))
        elif hi_ring is None:
            p = pole_index[i + 1]
            for k in range(n):
                tris.append((lo_ring + (k + 1) % n, lo_ring + k, p))
        else:
            for k in range(n):
                k1 = (k + 1) % n
                tris.append((lo_ring + k, hi_ring + k, hi_ring + k1))
                tris.append((lo_ring + k, hi_ring + k1, lo_ring + k1))

    # Flat caps on open ends.
    extra: list[np.ndarray] = []
    base = len(vertices)
    for end, ring in ((0, ring_index[0]), (len(profile_y) - 1, ring_index[-1])):
        if ring is None:
            continue
        center = np.array([[0.0, profile_y[end], 0.0]])
        c = base + len(extra)
        extra.append(center)
        for k in range(n):
            k1 = (k + 1) % n
            if end == 0:
                tris.append((c, ring + k, ring + k1))
            else:
                tris.append((c, ring + k1, ring + k))
    if extra:
        vertices = np.concatenate([vertices] + extra)

    faces = np.asarray(tris, dtype=np.int64)
    mesh = LabeledMesh(vertices, faces, np.full(len(faces), part), (part,))
    return _orient_outward(mesh)


def uv_sphere(radius: float = 1.0, segments: int = 128,
              center: np.ndarray | None = None) -> LabeledMesh:
    """Watertight UV sphere (pole fans), part 'body'."""
    a = np.linspace(-0.5 * np.pi, 0.5 * np.pi, segments + 1)
    mesh = lathe(radius * np.sin(a), radius * np.cos(a), segments)
    if center is not None:
        mesh.vertices = mesh.vertices + np.asarray(center, dtype=float)
    return mesh


def capped_cylinder(radius: float = 1.0, half_height: float = 2.0,
                    segments: int = 128) -> LabeledMesh:
    """Closed cylinder along +Y with flat disk caps."""
    y = np.linspace(-half_height, half_height, max(2, segments // 4))
    return lathe(y, np.full(len(y), radius), segments)


def torus_mesh(major_radius: float = 1.0, minor_radius: float = 0.4,
               major_segments: int = 128, minor_segments: int = 128,
               axis: str = "x") -> LabeledMesh:
    """Watertight torus; symmetry axis 'x', 'y' or 'z'; part 'body'."""
    verts, _, _ = _torus_grid(major_radius, minor_radius, major_segments, minor_segments)
    if axis == "y":
        verts = verts[:, [1, 0, 2]] * np.array([1.0, 1.0, -1.0])
    elif axis == "z":
        verts = verts[:, [2, 1, 0]] * np.array([-1.0, 1.0, 1.0])
    elif axis != "x":
        raise InvalidSpec(f"unknown torus axis {axis!r}")
    faces = _grid_faces(major_segments, minor_segments)
    mesh = LabeledMesh(verts, faces, np.full(len(faces), "body"), ("body",))
    return _orient_outward(mesh)


def _torus_grid(big_r: float, small_r: float, nu: int, nv: int):
    """Torus around +X: vertex grid plus the per-vertex angle arrays."""
    u = 2.0 * np.pi * np.arange(nu) / nu       # around the axis
    v = 2.0 * np.pi * np.arange(nv) / nv       # around the tube
    uu, vv = np.meshgrid(u, v, indexing="ij")
    e_r = np.stack([np.zeros_like(uu), np.cos(uu), np.sin(uu)], axis=-1)
    x_hat = np.array([1.0, 0.0, 0.0])
    center = big_r * e_r
    normal = np.cos(vv)[..., None] * e_r + np.sin(vv)[..., None] * x_hat
    pts = center + small_r * normal
    return pts.reshape(-1, 3), uu.reshape(-1), vv.reshape(-1)


def _grid_faces(nu: int, nv: int) -> np.ndarray:
    """Triangulated doubly-wrapped quad grid (nu x nv vertices, row-major)."""
    i = np.arange(nu)[:, None]
    j = np.arange(nv)[None, :]
    a = i * nv + j
    b = ((i + 1) % nu) * nv + j
    c = ((i + 1) % nu) * nv + (j + 1) % nv
    d = i * nv + (j + 1) % nv
    t1 = np.stack([a, b, c], axis=-1).reshape(-1, 3)
    t2 = np.stack([a, c, d], axis=-1).reshape(-1, 3)
    return np.concatenate([t1, t2]).astype(np.int64)


# ---------------------------------------------------------------------------
# Catalog shapes
# ---------------------------------------------------------------------------

def _check_spec(spec: ShapeSpec):
    if spec.shape_id not in SHAPE_IDS:
        raise InvalidSpec(f"unknown shape id {spec.shape_id!r}")
    for v in (spec.radial_segments, spec.axial_segments):
        if not (MIN_SEGMENTS <= v <= MAX_SEGMENTS):
            raise InvalidSpec(f"segment count {v} outside [{MIN_SEGMENTS}, {MAX_SEGMENTS}]")


def _hourglass(spec: ShapeSpec) -> LabeledMesh:
    y = np.linspace(-1.0, 1.0, spec.axial_segments + 1)
    return lathe(y, 0.3 + 0.7 * y * y, spec.radial_segments)


def _taper(spec: ShapeSpec) -> LabeledMesh:
    y = np.linspace(-1.0, 1.0, spec.axial_segments + 1)
    return lathe(y, 1.0 + (0.3 - 1.0) * (y + 1.0) / 2.0, spec.radial_segments)


def _tutorial_capsule(spec: ShapeSpec) -> LabeledMesh:
    r, half = 0.4, 0.6
    quarter = max(4, spec.axial_segments // 4)
    a = np.linspace(-0.5 * np.pi, 0.0, quarter + 1)
    y_bot = -half + r * np.sin(a)
    r_bot = r * np.cos(a)
    y_mid = np.linspace(-half, half, max(2, spec.axial_segments // 2))[1:-1]
    a2 = np.linspace(0.0, 0.5 * np.pi, quarter + 1)
    y_top = half + r * np.sin(a2)
    r_top = r * np.cos(a2)
    y = np.concatenate([y_bot, y_mid, y_top])
    rr = np.concatenate([r_bot, np.full(len(y_mid), r), r_top])
    return lathe(y, rr, spec.radial_segments)


def _capsule_sdf(points: np.ndarray, a: np.ndarray, b: np.ndarray, r: float) -> np.ndarray:
    pa = points - a
    ba = b - a
    h = np.clip(pa @ ba / float(ba @ ba), 0.0, 1.0)
    return np.linalg.norm(pa - h[..., None] * ba, axis=-1) - r


def _branch_endpoints() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    ang = math.radians(BRANCH_ANGLE_DEG)
    left = BRANCH_LENGTH * np.array([-math.sin(ang), math.cos(ang), 0.0])
    right = BRANCH_LENGTH * np.array([math.sin(ang), math.cos(ang), 0.0])
    return np.zeros(3), left, right


def _y_branch_part_sdfs(points: np.ndarray) -> np.ndarray:
    origin, left, right = _branch_endpoints()
    return np.stack([
        _capsule_sdf(points, TRUNK_BOTTOM, origin, TRUNK_RADIUS),
        _capsule_sdf(points, origin, left, BRANCH_RADIUS),
        _capsule_sdf(points, origin, right, BRANCH_RADIUS),
    ], axis=-1)


def _y_branch(spec: ShapeSpec) -> LabeledMesh:
    from skimage.measure import marching_cubes

    grid_n = int(np.clip(round(1.5 * max(spec.radial_segments, spec.axial_segments)),
                         48, 256))
    cell = 2.1 / grid_n
    xs = np.arange(-1.02, 1.02 + cell, cell)
    ys = np.arange(-1.10, 1.04 + cell, cell)
    zs = np.arange(-0.48, 0.48 + cell, cell)
    gx, gy, gz = np.meshgrid(xs, ys, zs, indexing="ij")
    pts = np.stack([gx, gy, gz], axis=-1)
    sdf = _y_branch_part_sdfs(pts.reshape(-1, 3)).min(axis=-1).reshape(gx.shape)
    # Keep the level set away from grid nodes so no marching-cubes triangle
    # collapses to zero area.
    tiny = 1e-4
    sdf = np.where(np.abs(sdf) < tiny, np.where(sdf >= 0, tiny, -tiny), sdf)

    verts, faces, _, _ = marching_cubes(sdf, level=0.0, spacing=(cell, cell, cell))
    verts = verts + np.array([xs[0], ys[0], zs[0]])
    labels = np.array(["stem", "branch_left", "branch_right"])
    centroids = verts[faces].mean(axis=1)
    part_of = labels[np.argmin(_y_branch_part_sdfs(centroids), axis=-1)]
    mesh = LabeledMesh(verts, faces.astype(np.int64), part_of,
                       ("stem", "branch_left", "branch_right"))
    return _orient_outward(mesh)


def _potato_hole(spec: ShapeSpec) -> LabeledMesh:
    nu, nv = spec.axial_segments, spec.radial_segments
    pts, uu, vv = _torus_grid(POTATO_MAJOR, POTATO_MINOR, nu, nv)
    rng = np.random.default_rng(spec.seed)
    coeffs = rng.normal(size=5)
    phases = rng.uniform(0.0, 2.0 * np.pi, size=5)
    g = (coeffs[0] * np.cos(uu + phases[0])
         + coeffs[1] * np.cos(2 * uu + phases[1])
         + coeffs[2] * np.cos(vv + phases[2])
         + coeffs[3] * np.cos(2 * vv + phases[3])
         + coeffs[4] * np.cos(uu + vv + phases[4]))
    delta = POTATO_NOISE_AMPLITUDE * g / max(float(np.abs(g).max()), 1e-9)
    e_r = np.stack([np.zeros_like(uu), np.cos(uu), np.sin(uu)], axis=-1)
    tube_normal = np.cos(vv)[..., None] * e_r + np.sin(vv)[..., None] * np.array([1.0, 0.0, 0.0])
    pts = pts + delta[:, None] * tube_normal
    pts = pts * POTATO_ANISO

    faces = _grid_faces(nu, nv)
    centroids = pts[faces].mean(axis=1)
    rho = np.hypot(centroids[:, 1], centroids[:, 2])
    part_of = np.where(rho < POTATO_MAJOR, "hole_surface", "outer_surface")

    pts = pts / float(np.abs(pts).max())  # normalize into the unit box
    mesh = LabeledMesh(pts, faces, part_of, ("outer_surface", "hole_surface"))
    return _orient_outward(mesh)


_BUILDERS = {
    "hourglass": _hourglass,
    "taper": _taper,
    "y_branch": _y_branch,
    "potato_hole": _potato_hole,
    "tutorial_capsule": _tutorial_capsule,
}


def make_shape(spec: ShapeSpec) -> LabeledMesh:
    """Build the labeled mesh for a ShapeSpec (pure, deterministic)."""
    _check_spec(spec)
    return _BUILDERS[spec.shape_id](spec)


@lru_cache(maxsize=16)
def _cached_shape(shape_id: str, radial: int, axial: int, seed: int,
                  part_set: tuple[str, ...]) -> LabeledMesh:
    return make_shape(ShapeSpec(shape_id, radial, axial, seed, part_set))


def catalog_mesh(shape_id: str) -> LabeledMesh:
    """Catalog shape at default resolution, cached per process."""
    spec = catalog_spec(shape_id)
    return _cached_shape(spec.shape_id, spec.radial_segments, spec.axial_segments,
                         spec.seed, spec.part_set)


# ---------------------------------------------------------------------------
# Sweep oracle
# ---------------------------------------------------------------------------

def sweep_areas(mesh: LabeledMesh, axis: np.ndarray, samples: int) -> SweepProfile:
    """Total slice area at `samples` bin-center offsets along `axis`.

    Offsets are the centers of equal bins spanning the mesh's projected
    extent, so no sample lands exactly on a tangent (cap) plane.
    """
    if samples < 64:
        raise InvalidSpec(f"samples {samples} < 64")
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    proj = mesh.vertices @ axis
    lo, hi = float(proj.min()), float(proj.max())
    step = (hi - lo) / samples
    offsets = lo + (np.arange(samples) + 0.5) * step
    areas = np.empty(samples)
    for i, off in enumerate(offsets):
        section = slice_mesh(mesh, Plane(off * axis, axis))
        areas[i] = section.total_area()
    return SweepProfile(axis=axis, offsets=offsets, areas=areas)
