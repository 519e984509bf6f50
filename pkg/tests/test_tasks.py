import numpy as np
import pytest

from slicetrainer.errors import ControlNotAvailable, SessionComplete, UnknownTask
from slicetrainer.shapes import sweep_areas
from slicetrainer.tasks import (
    CONFIRMATION_TEXT,
    ControlEvent,
    PlaneState,
    Session,
    TASK_ORDER,
    apply_control,
    default_library,
    evaluate_goal,
    hint,
    load_task,
    next_task_id,
    plane_pose,
    run_script,
    solution_script,
)
from slicetrainer.tasks.model import (
    SET_M1,
    SET_R1,
    SET_R2,
    SHOW_ANSWER,
    NEXT_TASK,
    TOGGLE_CROSS_SECTION,
    VIEW_LEFT,
    VIEW_UP,
)


@pytest.fixture(scope="module")
def library():
    return default_library()


# ---------------------------------------------------------------------------
# plane_pose
# ---------------------------------------------------------------------------

def test_pose_identity():
    plane = plane_pose(PlaneState())
    assert np.allclose(plane.origin, 0)
    assert np.allclose(plane.normal, [0, 1, 0])


def test_pose_rx_90_gives_z_normal():
    plane = plane_pose(PlaneState(r1=90.0))
    assert np.allclose(plane.normal, [0, 0, 1], atol=1e-12)


def test_pose_translation():
    plane = plane_pose(PlaneState(m1=0.5))
    assert np.allclose(plane.origin, [0, 0.5, 0])
    assert np.allclose(plane.normal, [0, 1, 0])


def test_pose_deterministic():
    a = plane_pose(PlaneState(0.2, -0.3, 15.0, -40.0))
    b = plane_pose(PlaneState(0.2, -0.3, 15.0, -40.0))
    assert np.array_equal(a.origin, b.origin)
    assert np.array_equal(a.normal, b.normal)


# ---------------------------------------------------------------------------
# load_task / masks
# ---------------------------------------------------------------------------

def test_task_structure(library):
    assert TASK_ORDER == ("L1T1", "L1T2", "L1T3", "L2T1", "L2T2", "L3T1")
    specs = [library.spec(t) for t in TASK_ORDER]
    assert [s.level for s in specs] == [1, 1, 1, 2, 2, 3]
    assert sorted(s.difficulty for s in specs) == [1, 2, 3, 4, 5, 6]


def test_every_task_has_a_plane_control(library):
    for task_id in TASK_ORDER:
        mask = library.spec(task_id).controls
        assert mask.move_sliders or mask.rotate_sliders


def test_run_script_with_mesh_verifies_goal(library):
    state = run_script("L1T1", mesh=library.mesh("hourglass"), library=library)
    assert state.plane.m1 == 0.0


def test_load_l1t1_hides_rotation(library):
    state = load_task("L1T1", library)
    assert state.spec.controls.move_sliders
    assert not state.spec.controls.rotate_sliders
    assert state.mode == "play"


def test_load_l2t2_all_four_sliders(library):
    state = load_task("L2T2", library)
    assert state.spec.controls.move_sliders
    assert state.spec.controls.rotate_sliders


def test_load_l3t1_initial_view_hides_hole(library):
    state = load_task("L3T1", library)
    assert state.spec.initial_camera.azimuth == 0.0
    # hole axis +X; looking from +Z the hole cannot be seen
    eye = state.camera.eye()
    assert abs(eye[0]) < 1e-9 and eye[2] > 0


def test_unknown_task(library):
    with pytest.raises(UnknownTask):
        load_task("L9T9", library)


# ---------------------------------------------------------------------------
# apply_control
# ---------------------------------------------------------------------------

def test_view_left_wraps_fully(library):
    state = load_task("L1T1", library)
    start = state.camera.azimuth
    for _ in range(24):
        apply_control(state, ControlEvent(VIEW_LEFT))
    assert state.camera.azimuth == pytest.approx(start)


def test_elevation_clamp(library):
    state = load_task("L1T1", library)
    state.camera.elevation = 80.0
    apply_control(state, ControlEvent(VIEW_UP))
    assert state.camera.elevation == 85.0
    for _ in range(30):
        apply_control(state, ControlEvent("view_down"))
    assert state.camera.elevation == -85.0


def test_slider_clamped(library):
    state = load_task("L1T1", library)
    apply_control(state, ControlEvent(SET_M1, 2.0))
    assert state.plane.m1 == 1.2


def test_hidden_control_rejected(library):
    state = load_task("L1T1", library)  # rotation hidden
    before = state.plane.r1
    with pytest.raises(ControlNotAvailable):
        apply_control(state, ControlEvent(SET_R1, 30.0))
    assert state.plane.r1 == before


def test_solution_mode_freezes_controls(library):
    session = Session(library)
    session.load_task("L1T1", 0)
    session.complete_task(1000)
    with pytest.raises(ControlNotAvailable):
        apply_control(session.state, ControlEvent(SET_M1, 0.0))
    with pytest.raises(ControlNotAvailable):
        apply_control(session.state, ControlEvent(TOGGLE_CROSS_SECTION))
    # show_answer / next_task are the only events allowed now
    session.show_answer(1500)


def test_solution_controls_rejected_in_play(library):
    state = load_task("L1T1", library)
    with pytest.raises(ControlNotAvailable):
        apply_control(state, ControlEvent(SHOW_ANSWER))


def test_toggle_cross_section(library):
    state = load_task("L1T1", library)
    assert not state.cross_section_visible
    apply_control(state, ControlEvent(TOGGLE_CROSS_SECTION))
    assert state.cross_section_visible


def test_random_event_sequences_keep_invariants(library):
    # Camera stays clamped with +Y up, sliders stay in range, and hidden
    # controls never change state, for arbitrary permitted event streams.
    rng = np.random.default_rng(5)
    kinds = [SET_M1, "set_m2", SET_R1, "set_r2", VIEW_LEFT, "view_right",
             VIEW_UP, "view_down", TOGGLE_CROSS_SECTION]
    for task_id in TASK_ORDER:
        state = load_task(task_id, library)
        mask = state.spec.controls
        for _ in range(200):
            kind = kinds[int(rng.integers(0, len(kinds)))]
            value = float(rng.uniform(-3, 3)) if kind.startswith("set_") else None
            hidden = ((kind in (SET_M1, "set_m2") and not mask.move_sliders)
                      or (kind in (SET_R1, "set_r2") and not mask.rotate_sliders))
            before = (state.plane.m1, state.plane.m2, state.plane.r1, state.plane.r2)
            if hidden:
                with pytest.raises(ControlNotAvailable):
                    apply_control(state, ControlEvent(kind, value))
                assert (state.plane.m1, state.plane.m2,
                        state.plane.r1, state.plane.r2) == before
            else:
                apply_control(state, ControlEvent(kind, value))
            assert -1.2 <= state.plane.m1 <= 1.2 and -1.2 <= state.plane.m2 <= 1.2
            assert -90 <= state.plane.r1 <= 90 and -90 <= state.plane.r2 <= 90
            assert -85.0 <= state.camera.elevation <= 85.0
            assert 0.0 <= state.camera.azimuth < 360.0
            # view up is the world +Y by construction: the eye orbit never
            # rolls, so the horizontal eye offset depends on azimuth only
            eye = state.camera.eye()
            el = np.deg2rad(state.camera.elevation)
            assert np.hypot(eye[0], eye[2]) == pytest.approx(
                state.camera.distance * np.cos(el), abs=1e-9)


# ---------------------------------------------------------------------------
# evaluate_goal
# ---------------------------------------------------------------------------

def test_l1t1_satisfied_at_sweep_minimum(library):
    mesh = library.mesh("hourglass")
    profile = sweep_areas(mesh, [0, 1, 0], 512)
    i_min = int(np.argmin(np.where(profile.areas > 0, profile.areas, np.inf)))
    state = load_task("L1T1", library)
    state.plane.set("m1", float(profile.offsets[i_min]))
    assert evaluate_goal(state.spec, state, mesh).satisfied


def test_l1t1_unsatisfied_at_maximum(library):
    mesh = library.mesh("hourglass")
    state = load_task("L1T1", library)
    state.plane.set("m1", 0.95)
    assert not evaluate_goal(state.spec, state, mesh).satisfied


def test_l1t3_initial_state_is_circle_not_oval(library):
    state = load_task("L1T3", library)
    result = evaluate_goal(state.spec, state, library.mesh("hourglass"))
    assert not result.satisfied
    assert result.diagnostics["axis_ratios"][0] == pytest.approx(1.0, abs=0.02)


def test_l2t1_satisfied_at_y06(library):
    state = load_task("L2T1", library)
    state.plane.set("m1", 0.6)
    result = evaluate_goal(state.spec, state, library.mesh("y_branch"))
    assert result.satisfied
    assert result.diagnostics["loop_count"] == 2


def test_goal_diagnostics_always_populated(library):
    state = load_task("L2T1", library)  # initial plane: not satisfied
    result = evaluate_goal(state.spec, state, library.mesh("y_branch"))
    assert not result.satisfied
    for key in ("loop_count", "areas", "axis_ratios", "parts", "nesting_depths"):
        assert key in result.diagnostics


# ---------------------------------------------------------------------------
# hint
# ---------------------------------------------------------------------------

def test_l1t1_hint_far_from_waist(library):
    state = load_task("L1T1", library)
    state.plane.set("m1", 0.9)
    text = hint(state.spec, state, library.mesh("hourglass"))
    assert text == "move the plane to the middle of the hourglass"


def test_hint_confirms_correct_answer(library):
    state = load_task("L1T1", library)
    state.plane.set("m1", 0.0)
    assert hint(state.spec, state, library.mesh("hourglass")) == CONFIRMATION_TEXT


def test_l3t1_hint_rotate_view_first(library):
    state = load_task("L3T1", library)
    text = hint(state.spec, state, library.mesh("potato_hole"))
    assert "rotate the view" in text.lower()
    # once the camera moved away, the plane-rotation hint takes over
    state.camera.azimuth = 270.0
    text2 = hint(state.spec, state, library.mesh("potato_hole"))
    assert "rotate the plane" in text2.lower()


# ---------------------------------------------------------------------------
# complete_task / scoring
# ---------------------------------------------------------------------------

def test_complete_at_waist_scores_100(library):
    session = Session(library)
    session.load_task("L1T1", 0)
    session.dispatch(ControlEvent(SET_M1, 0.0), 5000)
    record = session.complete_task(9000)
    assert record.points == 100
    assert record.elapsed_s == pytest.approx(9.0)
    assert session.state.mode == "solution"
    assert "svg" in record.final_snapshot and "state" in record.final_snapshot


def test_complete_wrong_scores_0_no_penalty(library):
    session = Session(library)
    session.load_task("L1T1", 0)
    session.dispatch(ControlEvent(SET_M1, 0.9), 1000)
    record = session.complete_task(2000)
    assert record.points == 0
    # session continues: solution page then next task
    session.next_task(3000)
    assert session.state.spec.task_id == "L1T2"


def test_all_six_completed_correctly_score_600(library):
    session = Session(library)
    session.load_task("L1T1", 0)
    t = 0
    while True:
        for step in session.state.spec.solution:
            t += step.dwell_ms
            session.dispatch(step.event, t)
        t += 500
        session.complete_task(t)
        try:
            t += 500
            session.next_task(t)
        except SessionComplete:
            break
    assert session.total_score() == 600


# ---------------------------------------------------------------------------
# solution scripts
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("task_id", TASK_ORDER)
def test_script_self_satisfaction(task_id, library):
    state = run_script(task_id, library=library)
    mesh = library.mesh(state.spec.shape_id)
    assert evaluate_goal(state.spec, state, mesh).satisfied


def test_l1t1_script_lands_on_waist(library):
    state = run_script("L1T1", library=library)
    assert abs(state.plane.m1) < 0.05


def test_l3t1_script_rotates_view_before_plane():
    script = solution_script("L3T1")
    kinds = [s.event.kind for s in script]
    first_view = kinds.index(VIEW_LEFT)
    first_rotation = min(i for i, k in enumerate(kinds) if k in (SET_R1, SET_R2))
    assert first_view < first_rotation


def test_script_rerun_identical(library):
    a = run_script("L2T2", library=library)
    b = run_script("L2T2", library=library)
    assert a.snapshot() == b.snapshot()


def test_scripts_only_use_visible_controls(library):
    for task_id in TASK_ORDER:
        run_script(task_id, library=library)  # mask guard raises otherwise


# ---------------------------------------------------------------------------
# next_task
# ---------------------------------------------------------------------------

def test_task_order_progression(library):
    assert next_task_id("L1T3") == "L2T1"
    assert next_task_id("L3T1") is None


def test_next_task_after_last_raises(library):
    session = Session(library)
    session.load_task("L3T1", 0)
    session.complete_task(100)
    with pytest.raises(SessionComplete):
        session.next_task(200)


def test_next_task_rejected_in_play_mode(library):
    session = Session(library)
    session.load_task("L1T1", 0)
    with pytest.raises(ControlNotAvailable):
        session.next_task(100)


# ---------------------------------------------------------------------------
# prompts
# ---------------------------------------------------------------------------

def test_prompts_are_the_published_task_texts(library):
    prompts = {t: library.spec(t).prompt for t in TASK_ORDER}
    assert prompts["L1T1"] == ("Move the plane so that it creates a cross-section "
                               "for the skinniest/ thinnest part of the given 3D shape")
    assert prompts["L1T2"] == ("Move the plane so that it creates a cross-section "
                               "for the fattest/thickest part of the given 3D shape")
    assert prompts["L1T3"] == ("Adjust the plane to change the cross-section shape "
                               "from a circle to an oval")
    assert prompts["L2T1"] == ("Adjust the plane so that it creates a cross-section "
                               "that cuts across both branches but not the stem.")
    assert prompts["L2T2"] == ("Adjust the plane to create a single, oval-ish "
                               "cross-section that crosses both one branch and the trunk.")
    assert prompts["L3T1"] == ("Adjust the plane so that the hole in the object "
                               "creates a circular cross section (surrounded by an "
                               "oval-ish cross section for the outside of the shape). "
                               "Place the plane through the fattest part of the shape.")
