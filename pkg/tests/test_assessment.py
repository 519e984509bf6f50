import json

import pytest

from slicetrainer import Plane, slice_mesh
from slicetrainer.assessment import (
    DISTINCT_MIN,
    MATCH_TOL,
    assessment_mesh,
    build_item_bank,
    contour_metrics,
    export_item_bank,
    gen_item_cat1,
    gen_item_cat2,
    gen_item_cat3,
    metric_distance,
)
from slicetrainer.errors import InvalidSpec


def _slice_metrics(shape_id, plane_dict):
    mesh = assessment_mesh(shape_id)
    section = slice_mesh(mesh, Plane.from_dict(plane_dict))
    return contour_metrics(section)


# ---------------------------------------------------------------------------
# category 1
# ---------------------------------------------------------------------------

def test_cat1_sphere_equator():
    plane = Plane([0, 0, 0], [0, 1, 0])
    item = gen_item_cat1("sphere", plane, 4, seed=3)
    assert len(item.options) == 4
    key = item.options[item.correct]["metrics"]
    # answer-key soundness: re-slicing the stimulus matches only the key
    stim = _slice_metrics("sphere", item.stimulus["plane"])
    assert metric_distance(stim, key) <= MATCH_TOL
    for j, opt in enumerate(item.options):
        if j != item.correct:
            assert metric_distance(stim, opt["metrics"]) >= DISTINCT_MIN


def test_cat1_deterministic():
    plane = Plane([0, 0, 0], [0, 1, 0])
    a = gen_item_cat1("sphere", plane, 4, seed=3)
    b = gen_item_cat1("sphere", plane, 4, seed=3)
    assert json.dumps(a.to_dict(), sort_keys=True) == json.dumps(b.to_dict(), sort_keys=True)


def test_cat1_requires_three_options():
    with pytest.raises(InvalidSpec):
        gen_item_cat1("sphere", Plane([0, 0, 0], [0, 1, 0]), 2, seed=0)


def test_cat1_pairwise_distinct():
    item = gen_item_cat1("hourglass", Plane([0, 0.3, 0], [0, 1, 0]), 4, seed=11)
    ms = [o["metrics"] for o in item.options]
    for i in range(len(ms)):
        for j in range(i + 1, len(ms)):
            assert metric_distance(ms[i], ms[j]) >= DISTINCT_MIN


# ---------------------------------------------------------------------------
# category 2
# ---------------------------------------------------------------------------

def test_cat2_hourglass_waist_unique_match():
    target = Plane([0, 0, 0], [0, 1, 0])
    item = gen_item_cat2("hourglass", target, 4, seed=5)
    stim = item.stimulus["metrics"]
    for j, opt in enumerate(item.options):
        m = _slice_metrics("hourglass", opt["plane"])
        if j == item.correct:
            assert metric_distance(stim, m) <= MATCH_TOL
        else:
            assert metric_distance(stim, m) >= DISTINCT_MIN


def test_cat2_deterministic():
    target = Plane([0, 0, 0], [0, 1, 0])
    a = gen_item_cat2("hourglass", target, 4, seed=9)
    b = gen_item_cat2("hourglass", target, 4, seed=9)
    assert json.dumps(a.to_dict(), sort_keys=True) == json.dumps(b.to_dict(), sort_keys=True)


def test_cat2_y_branch_loop_count_discriminates():
    target = Plane([0, 0.6, 0], [0, 1, 0])  # above the bifurcation: 2 loops
    item = gen_item_cat2("y_branch", target, 4, seed=2)
    stim = item.stimulus["metrics"]
    assert stim["loop_count"] == 2
    correct_m = _slice_metrics("y_branch", item.options[item.correct]["plane"])
    assert correct_m["loop_count"] == 2
    assert metric_distance(stim, correct_m) <= MATCH_TOL


# ---------------------------------------------------------------------------
# category 3
# ---------------------------------------------------------------------------

def test_cat3_taper_decreasing_areas():
    planes = [Plane([0, y, 0], [0, 1, 0]) for y in (-0.8, -0.4, 0.0, 0.4)]
    item = gen_item_cat3("taper", planes, 4, seed=4)
    key = item.options[item.correct]["metrics_seq"]
    areas = [m["total_area"] for m in key]
    assert areas == sorted(areas, reverse=True)


def test_cat3_y_branch_loop_count_transition():
    planes = [Plane([0, y, 0], [0, 1, 0]) for y in (-0.6, -0.2, 0.45, 0.7)]
    item = gen_item_cat3("y_branch", planes, 4, seed=8)
    key = item.options[item.correct]["metrics_seq"]
    counts = [m["loop_count"] for m in key]
    assert counts == [1, 1, 2, 2]


def test_cat3_distractors_differ_somewhere():
    planes = [Plane([0, y, 0], [0, 1, 0]) for y in (-0.8, -0.4, 0.0, 0.4)]
    item = gen_item_cat3("taper", planes, 4, seed=4)
    key = item.options[item.correct]["metrics_seq"]
    for j, opt in enumerate(item.options):
        if j == item.correct:
            continue
        dists = [metric_distance(a, b) for a, b in zip(key, opt["metrics_seq"])]
        assert max(dists) >= DISTINCT_MIN


def test_cat3_requires_three_planes():
    with pytest.raises(InvalidSpec):
        gen_item_cat3("taper", [Plane([0, 0, 0], [0, 1, 0])] * 2, 4, seed=0)


# ---------------------------------------------------------------------------
# item bank
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def small_bank():
    return build_item_bank((3, 2, 1), n_controls=2, seed=123)


def test_bank_composition(small_bank):
    cats = [i.category for i in small_bank if i.control_of is None]
    assert cats.count(1) == 3 and cats.count(2) == 2 and cats.count(3) == 1
    controls = [i for i in small_bank if i.control_of is not None]
    assert len(controls) == 2


def test_bank_controls_are_shuffled_duplicates(small_bank):
    for ctrl in small_bank:
        if ctrl.control_of is None:
            continue
        src = small_bank[ctrl.control_of]
        assert ctrl.stimulus == src.stimulus
        key = json.dumps(ctrl.options[ctrl.correct], sort_keys=True)
        src_key = json.dumps(src.options[src.correct], sort_keys=True)
        assert key == src_key


def test_bank_deterministic():
    a = build_item_bank((2, 1, 1), n_controls=1, seed=99)
    b = build_item_bank((2, 1, 1), n_controls=1, seed=99)
    assert json.dumps([i.to_dict() for i in a], sort_keys=True) == \
           json.dumps([i.to_dict() for i in b], sort_keys=True)


def test_bank_export(tmp_path, small_bank):
    written = export_item_bank(small_bank, tmp_path / "bank", seed=123)
    manifest = json.loads((tmp_path / "bank" / "manifest.json").read_text())
    assert manifest["n_items"] == len(small_bank)
    assert all((tmp_path / "bank" / f).exists()
               for f in [w.split("/")[-1] for w in written])
    # exporting twice is byte-identical
    export_item_bank(small_bank, tmp_path / "bank2", seed=123)
    assert (tmp_path / "bank" / "manifest.json").read_bytes() == \
           (tmp_path / "bank2" / "manifest.json").read_bytes()
