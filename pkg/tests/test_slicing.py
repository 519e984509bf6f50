import numpy as np
import pytest

from slicetrainer import (
    ClassifierThresholds,
    LabeledMesh,
    Loop,
    LoopMetrics,
    Plane,
    build_nesting,
    classify_loop,
    compute_metrics,
    loop_parts,
    slice_mesh,
)
from slicetrainer.errors import (
    CrossingLoops,
    DegenerateLoop,
    DegeneratePlane,
    NonWatertightMesh,
)
from slicetrainer.geometry.slicing import points_in_polygon, signed_area_2d
from slicetrainer.shapes import sweep_areas, torus_mesh, capped_cylinder

from conftest import circle_loop


# ---------------------------------------------------------------------------
# slice_mesh
# ---------------------------------------------------------------------------

def test_sphere_equator_great_circle(sphere128):
    section = slice_mesh(sphere128, Plane([0, 0, 0], [0, 1, 0]))
    assert section.loop_count == 1
    assert section.metrics[0].area == pytest.approx(np.pi, rel=0.01)
    assert section.metrics[0].axis_ratio == pytest.approx(1.0, rel=0.01)


def test_torus_axis_slice_nested_annulus():
    torus = torus_mesh(1.0, 0.4, 128, 128, axis="x")
    section = slice_mesh(torus, Plane([0, 0, 0], [1, 0, 0]))
    assert section.loop_count == 2
    roots = section.roots()
    assert len(roots) == 1
    outer = roots[0]
    inner = 1 - outer
    assert section.parent[inner] == outer
    r_outer = np.sqrt(section.metrics[outer].area / np.pi)
    r_inner = np.sqrt(section.metrics[inner].area / np.pi)
    assert r_outer == pytest.approx(1.4, rel=0.01)
    assert r_inner == pytest.approx(0.6, rel=0.01)


def test_hourglass_waist_equals_sweep_minimum(hourglass):
    # Brute-force oracle: a dense vertical sweep locates the waist.
    profile = sweep_areas(hourglass, [0, 1, 0], 512)
    i_min = int(np.argmin(np.where(profile.areas > 0, profile.areas, np.inf)))
    waist_height = profile.offsets[i_min]
    section = slice_mesh(hourglass, Plane([0, waist_height, 0], [0, 1, 0]))
    assert section.loop_count == 1
    assert section.metrics[0].area == pytest.approx(profile.areas[i_min], abs=1e-6)


def test_plane_missing_mesh_gives_empty_section(sphere128):
    section = slice_mesh(sphere128, Plane([0, 5, 0], [0, 1, 0]))
    assert section.loop_count == 0
    assert section.parent == [] and section.metrics == [] and section.parts == []


def test_non_unit_normal_rejected(sphere128):
    with pytest.raises(DegeneratePlane):
        slice_mesh(sphere128, Plane([0, 0, 0], [0, 2, 0]))


def test_non_watertight_mesh_detected():
    # One triangle ripped out of a sphere: its edges have 1 incident triangle.
    from slicetrainer.shapes import uv_sphere
    s = uv_sphere(1.0, 32)
    broken = LabeledMesh(s.vertices, s.triangles[:-1], s.part_of[:-1], s.part_set)
    with pytest.raises(NonWatertightMesh):
        broken.validate()
    # The missing triangle straddles an equatorial plane only if the hole is
    # near the slicing band; slice through the hole's row to confirm.
    hole_y = s.vertices[s.triangles[-1]].mean(axis=0)[1]
    with pytest.raises(NonWatertightMesh):
        slice_mesh(broken, Plane([0, hole_y, 0], [0, 1, 0]))


def test_vertex_on_plane_degeneracy_is_resolved(hourglass):
    # The lathe has a vertex ring exactly at y = 0.
    assert np.any(np.abs(hourglass.vertices[:, 1]) < 1e-12)
    section = slice_mesh(hourglass, Plane([0, 0, 0], [0, 1, 0]))
    assert section.loop_count == 1
    assert section.metrics[0].area == pytest.approx(np.pi * 0.09, rel=0.01)


def test_segment_count_matches_straddling_triangles(hourglass):
    from slicetrainer.geometry.slicing import _slice_raw
    data = _slice_raw(hourglass, Plane([0.1, 0.2, 0.0], [0.3, 0.9, 0.3] / np.linalg.norm([0.3, 0.9, 0.3])))
    n_points = sum(len(e) for e in data.loops_edges)
    n_straddle = sum(len(t) for t in data.loops_tris)
    assert n_points == n_straddle  # one segment per straddling triangle


def test_loop_closure_across_shapes(hourglass, y_branch, potato):
    rng = np.random.default_rng(7)
    for mesh in (hourglass, y_branch, potato):
        for _ in range(5):
            n = rng.normal(size=3)
            n /= np.linalg.norm(n)
            section = slice_mesh(mesh, Plane(rng.uniform(-0.3, 0.3, 3), n))
            for lp in section.loops:
                assert len(lp.points) >= 3
                assert lp.is_closed


# ---------------------------------------------------------------------------
# compute_metrics
# ---------------------------------------------------------------------------

def test_circle_metrics():
    loop = Loop(circle_loop(1.0, 256))
    m = compute_metrics(loop, Plane([0, 0, 0], [0, 1, 0]))
    assert m.area == pytest.approx(np.pi, rel=1e-3)
    assert m.axis_ratio == pytest.approx(1.0, rel=1e-3)
    assert m.perimeter == pytest.approx(2 * np.pi, rel=1e-3)
    assert np.allclose(m.centroid, 0.0, atol=1e-12)


def test_oblique_cylinder_axis_ratio():
    cyl = capped_cylinder(1.0, 2.0, 128)
    a = np.deg2rad(30)
    section = slice_mesh(cyl, Plane([0, 0, 0], [0, np.cos(a), np.sin(a)]))
    assert section.loop_count == 1
    assert section.metrics[0].axis_ratio == pytest.approx(1 / np.cos(a), rel=0.01)


def test_rectangle_metrics():
    pts = np.array([[-1, 0, -0.5], [1, 0, -0.5], [1, 0, 0.5], [-1, 0, 0.5]], dtype=float)
    m = compute_metrics(Loop(pts), Plane([0, 0, 0], [0, 1, 0]))
    assert m.area == pytest.approx(2.0, abs=1e-12)
    assert m.axis_ratio == pytest.approx(2.0, abs=1e-9)


def test_collinear_loop_rejected():
    pts = np.array([[0, 0, 0], [1, 0, 0], [2, 0, 0], [3, 0, 0]], dtype=float)
    with pytest.raises(DegenerateLoop):
        compute_metrics(Loop(pts), Plane([0, 0, 0], [0, 1, 0]))


def test_metrics_frame_independent():
    # The same area must come out of a shoelace in any orthonormal in-plane
    # frame; compute_metrics uses no frame at all.
    rng = np.random.default_rng(3)
    t = 2 * np.pi * np.arange(64) / 64
    pts = np.column_stack([1.3 * np.cos(t), np.zeros(64), 0.7 * np.sin(t)])
    m = compute_metrics(Loop(pts), Plane([0, 0, 0], [0, 1, 0]))
    for _ in range(4):
        phi = rng.uniform(0, 2 * np.pi)
        u = np.array([np.cos(phi), 0.0, np.sin(phi)])
        v = np.array([-np.sin(phi), 0.0, np.cos(phi)])
        p2 = np.column_stack([pts @ u, pts @ v])
        assert abs(signed_area_2d(p2)) == pytest.approx(m.area, abs=1e-9)


def test_rigid_invariance(hourglass, potato):
    rng = np.random.default_rng(11)
    cases = [
        (hourglass, Plane([0.1, 0.3, 0.0],
                          [0.2, 0.95, 0.1] / np.linalg.norm([0.2, 0.95, 0.1]))),
        (potato, Plane([0, 0, 0], [1.0, 0, 0])),  # nested annulus section
    ]
    for mesh, plane in cases:
        # Random rotation (QR of a Gaussian) and translation.
        q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
        if np.linalg.det(q) < 0:
            q[:, 0] = -q[:, 0]
        t = rng.uniform(-2, 2, 3)
        moved = mesh.transformed(q, t)
        plane_moved = Plane(q @ plane.origin + t, q @ plane.normal)
        a = slice_mesh(mesh, plane)
        b = slice_mesh(moved, plane_moved)
        assert a.loop_count == b.loop_count
        assert a.parent == b.parent
        assert a.parts == b.parts
        for ma, mb in zip(a.metrics, b.metrics):
            assert ma.area == pytest.approx(mb.area, abs=1e-6)
            assert ma.perimeter == pytest.approx(mb.perimeter, abs=1e-6)
            assert ma.axis_ratio == pytest.approx(mb.axis_ratio, abs=1e-6)
            assert classify_loop(ma) == classify_loop(mb)


def test_sphere_sweep_invariant(sphere128):
    for h in (0.0, 0.25, 0.5, 0.75):
        section = slice_mesh(sphere128, Plane([0, h, 0], [0, 1, 0]))
        assert section.loop_count == 1
        assert section.metrics[0].area == pytest.approx(np.pi * (1 - h * h), rel=0.01)


# ---------------------------------------------------------------------------
# classify_loop
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("ratio,expected", [
    (1.05, "circle"),
    (1.50, "oval"),
    (1.22, "other"),
    (1.15, "circle"),
    (1.30, "oval"),
])
def test_classify_thresholds(ratio, expected):
    m = LoopMetrics(area=1.0, perimeter=1.0, axis_ratio=ratio, centroid=np.zeros(3))
    assert classify_loop(m) == expected


def test_classify_custom_thresholds():
    m = LoopMetrics(area=1.0, perimeter=1.0, axis_ratio=1.22, centroid=np.zeros(3))
    assert classify_loop(m, ClassifierThresholds(1.25, 1.40)) == "circle"


# ---------------------------------------------------------------------------
# build_nesting
# ---------------------------------------------------------------------------

def test_nesting_concentric():
    plane = Plane([0, 0, 0], [0, 1, 0])
    loops = [Loop(circle_loop(0.5)), Loop(circle_loop(1.0))]
    assert build_nesting(loops, plane) == [1, None]


def test_nesting_disjoint_roots():
    plane = Plane([0, 0, 0], [0, 1, 0])
    loops = [Loop(circle_loop(1.0, center=(-2, 0, 0))),
             Loop(circle_loop(1.0, center=(2, 0, 0)))]
    assert build_nesting(loops, plane) == [None, None]


def test_nesting_three_deep_chain_matches_bruteforce():
    plane = Plane([0, 0, 0], [0, 1, 0])
    radii = [0.25, 0.5, 1.0]
    loops = [Loop(circle_loop(r)) for r in radii]
    parents = build_nesting(loops, plane)

    # Independent brute-force containment oracle over all ordered pairs:
    # parent = smallest loop that contains all sample points.
    pts2 = [lp.points[:, [0, 2]] for lp in loops]
    expected = []
    for i in range(3):
        candidates = []
        for j in range(3):
            if i != j and bool(points_in_polygon(pts2[i], pts2[j]).all()):
                candidates.append(j)
        expected.append(min(candidates, key=lambda j: radii[j]) if candidates else None)
    assert parents == expected == [1, 2, None]


def test_crossing_loops_detected():
    plane = Plane([0, 0, 0], [0, 1, 0])
    loops = [Loop(circle_loop(1.0)), Loop(circle_loop(1.0, center=(1.0, 0, 0)))]
    with pytest.raises(CrossingLoops):
        build_nesting(loops, plane)


# ---------------------------------------------------------------------------
# loop_parts
# ---------------------------------------------------------------------------

def test_loop_parts_hourglass(hourglass):
    section = slice_mesh(hourglass, Plane([0, 0, 0], [0, 1, 0]))
    assert loop_parts(section.loops[0], hourglass) == frozenset({"body"})


def test_loop_parts_y_branch(y_branch):
    section = slice_mesh(y_branch, Plane([0, 0.6, 0], [0, 1, 0]))
    assert section.loop_count == 2
    parts = {loop_parts(lp, y_branch) for lp in section.loops}
    assert parts == {frozenset({"branch_left"}), frozenset({"branch_right"})}


def test_loop_parts_potato_inner(potato):
    section = slice_mesh(potato, Plane([0, 0, 0], [1, 0, 0]))
    inner = [i for i, p in enumerate(section.parent) if p is not None][0]
    assert loop_parts(section.loops[inner], potato) == frozenset({"hole_surface"})
