import numpy as np
import pytest

from slicetrainer import Plane, slice_mesh
from slicetrainer.errors import InvalidSpec
from slicetrainer.shapes import (
    ShapeSpec,
    make_shape,
    shape_catalog,
    sweep_areas,
    uv_sphere,
)


def test_catalog_has_five_canonical_shapes():
    catalog = shape_catalog()
    assert len(catalog) == 5
    assert {s.shape_id for s in catalog} == {
        "hourglass", "taper", "y_branch", "potato_hole", "tutorial_capsule"}


def test_catalog_calls_identical():
    assert shape_catalog() == shape_catalog()


def test_generation_deterministic():
    spec = ShapeSpec("potato_hole", 64, 64, seed=7,
                     part_set=("outer_surface", "hole_surface"))
    a = make_shape(spec)
    b = make_shape(spec)
    assert np.array_equal(a.vertices, b.vertices)
    assert np.array_equal(a.triangles, b.triangles)
    assert np.array_equal(a.part_of, b.part_of)


def test_hourglass_genus_zero(hourglass):
    hourglass.validate()
    assert hourglass.euler_characteristic() == 2


def test_potato_genus_one(potato):
    potato.validate()
    assert potato.euler_characteristic() == 0
    assert potato.genus() == 1


@pytest.mark.parametrize("seed", [0, 13, 57, 99])
def test_potato_keeps_genus_one_across_seeds(seed):
    mesh = make_shape(ShapeSpec("potato_hole", 48, 48, seed=seed,
                                part_set=("outer_surface", "hole_surface")))
    mesh.validate()
    assert mesh.genus() == 1


def test_all_catalog_shapes_valid_and_boxed(hourglass, taper, y_branch, potato, capsule):
    expected_genus = {"hourglass": 0, "taper": 0, "y_branch": 0,
                      "potato_hole": 1, "tutorial_capsule": 0}
    for spec, mesh in zip(shape_catalog(),
                          (hourglass, taper, y_branch, potato, capsule)):
        mesh.validate()
        assert mesh.genus() == expected_genus[spec.shape_id]
        assert np.abs(mesh.vertices).max() <= 1.0 + 1e-9
        assert set(mesh.part_of) <= set(spec.part_set)


def test_y_branch_has_all_three_labels(y_branch):
    assert set(y_branch.part_of) == {"stem", "branch_left", "branch_right"}


def test_y_branch_slice_counts(y_branch):
    # Below the bifurcation: one loop; above separation: two loops.
    for y in (-0.9, -0.5, -0.1):
        assert slice_mesh(y_branch, Plane([0, y, 0], [0, 1, 0])).loop_count == 1
    for y in (0.32, 0.5, 0.6, 0.8):
        section = slice_mesh(y_branch, Plane([0, y, 0], [0, 1, 0]))
        assert section.loop_count == 2
        assert section.parent == [None, None]


def test_y_branch_slice_at_0p6_branch_labels(y_branch):
    section = slice_mesh(y_branch, Plane([0, 0.6, 0], [0, 1, 0]))
    assert {frozenset(p) for p in section.parts} == {
        frozenset({"branch_left"}), frozenset({"branch_right"})}


def test_unknown_shape_rejected():
    with pytest.raises(InvalidSpec):
        make_shape(ShapeSpec("banana", 64, 64))


def test_out_of_range_segments_rejected():
    with pytest.raises(InvalidSpec):
        make_shape(ShapeSpec("hourglass", 8, 64))


# ---------------------------------------------------------------------------
# sweep_areas
# ---------------------------------------------------------------------------

def test_hourglass_sweep_minimum_at_waist(hourglass):
    profile = sweep_areas(hourglass, [0, 1, 0], 512)
    step = profile.offsets[1] - profile.offsets[0]
    i_min = int(np.argmin(np.where(profile.areas > 0, profile.areas, np.inf)))
    assert abs(profile.offsets[i_min]) <= step  # waist at y=0 by construction
    assert np.all(np.diff(profile.offsets) > 0)
    assert np.all(profile.areas >= 0)


def test_taper_sweep_maximum_at_base(taper):
    profile = sweep_areas(taper, [0, 1, 0], 512)
    assert int(np.argmax(profile.areas)) == 0  # bottommost body sample


def test_sphere_sweep_maximum_at_center():
    profile = sweep_areas(uv_sphere(1.0, 128), [0, 1, 0], 512)
    i_max = int(np.argmax(profile.areas))
    step = profile.offsets[1] - profile.offsets[0]
    assert abs(profile.offsets[i_max]) <= step
    assert profile.areas[i_max] == pytest.approx(np.pi, rel=0.01)


def test_sweep_requires_64_samples(hourglass):
    with pytest.raises(InvalidSpec):
        sweep_areas(hourglass, [0, 1, 0], 32)
