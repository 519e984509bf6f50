"""The six training tasks: prompts, masks, initial poses, goals, scripts."""

from __future__ import annotations

from .model import (
    CameraState,
    ControlEvent,
    ControlMask,
    GoalSpec,
    HelpRule,
    PlaneState,
    ScriptStep,
    SET_M1,
    SET_R1,
    SET_R2,
    TOGGLE_CROSS_SECTION,
    TaskSpec,
    VIEW_LEFT,
)

TASK_ORDER = ("L1T1", "L1T2", "L1T3", "L2T1", "L2T2", "L3T1")

CONFIRMATION_TEXT = ("Your cross-section is correct! You can press "
                     "Complete Task to move on.")


def _step(kind: str, value: float | None = None, dwell_ms: int = 800) -> ScriptStep:
    return ScriptStep(ControlEvent(kind, value), dwell_ms)


_MOVE_ONLY = ControlMask(move_sliders=True, rotate_sliders=False)
_ROTATE_ONLY = ControlMask(move_sliders=False, rotate_sliders=True)
_ALL_SLIDERS = ControlMask(move_sliders=True, rotate_sliders=True)


TASKS: dict[str, TaskSpec] = {
    "L1T1": TaskSpec(
        task_id="L1T1", level=1, difficulty=1, shape_id="hourglass",
        prompt=("Move the plane so that it creates a cross-section for the "
                "skinniest/ thinnest part of the given 3D shape"),
        initial_plane=PlaneState(m1=0.8),
        initial_camera=CameraState(azimuth=0.0, elevation=0.0),
        controls=_MOVE_ONLY,
        goal=GoalSpec("min_area_band", {"factor": 1.05, "sweep_axis": "y",
                                        "sweep_samples": 512}),
        help_rules=(
            HelpRule("far_from_waist", "move the plane to the middle of the hourglass"),
            HelpRule("generic", "Use the movement sliders to slide the plane toward "
                                "the narrowest part of the shape."),
        ),
        solution=(_step(SET_M1, 0.4), _step(SET_M1, 0.1), _step(SET_M1, 0.0),
                  _step(TOGGLE_CROSS_SECTION)),
    ),
    "L1T2": TaskSpec(
        task_id="L1T2", level=1, difficulty=2, shape_id="taper",
        prompt=("Move the plane so that it creates a cross-section for the "
                "fattest/thickest part of the given 3D shape"),
        initial_plane=PlaneState(m1=0.8),
        initial_camera=CameraState(azimuth=30.0, elevation=20.0),
        controls=_MOVE_ONLY,
        goal=GoalSpec("max_area_band", {"factor": 0.95, "sweep_axis": "y",
                                        "sweep_samples": 512}),
        help_rules=(
            HelpRule("not_at_base", "Move the plane down toward the widest part of "
                                    "the shape, near its base."),
            HelpRule("generic", "Slide the plane and watch how the size of the "
                                "cross-section changes."),
        ),
        solution=(_step(SET_M1, 0.2), _step(SET_M1, -0.5), _step(SET_M1, -0.97),
                  _step(TOGGLE_CROSS_SECTION)),
    ),
    "L1T3": TaskSpec(
        task_id="L1T3", level=1, difficulty=3, shape_id="hourglass",
        prompt=("Adjust the plane to change the cross-section shape from a "
                "circle to an oval"),
        initial_plane=PlaneState(),
        initial_camera=CameraState(azimuth=0.0, elevation=0.0),
        controls=_ROTATE_ONLY,
        goal=GoalSpec("single_oval", {}),
        help_rules=(
            HelpRule("still_flat", "Tilt the plane with a rotation slider; a tilted "
                                   "cut stretches the circle into an oval."),
            HelpRule("generic", "Keep rotating the plane until the cross-section is "
                                "clearly longer than it is wide."),
        ),
        solution=(_step(SET_R1, 25.0), _step(SET_R1, 50.0),
                  _step(TOGGLE_CROSS_SECTION)),
    ),
    "L2T1": TaskSpec(
        task_id="L2T1", level=2, difficulty=4, shape_id="y_branch",
        prompt=("Adjust the plane so that it creates a cross-section that cuts "
                "across both branches but not the stem."),
        initial_plane=PlaneState(m1=-0.5),
        initial_camera=CameraState(azimuth=30.0, elevation=20.0),
        controls=_MOVE_ONLY,
        goal=GoalSpec("two_branch_loops", {}),
        help_rules=(
            HelpRule("below_bifurcation", "Move the plane up, above the point where "
                                          "the shape splits into two branches."),
            HelpRule("generic", "You want two separate cross-sections, one for each "
                                "branch, without touching the stem."),
        ),
        solution=(_step(SET_M1, 0.0), _step(SET_M1, 0.55),
                  _step(TOGGLE_CROSS_SECTION)),
    ),
    "L2T2": TaskSpec(
        task_id="L2T2", level=2, difficulty=5, shape_id="y_branch",
        prompt=("Adjust the plane to create a single, oval-ish cross-section "
                "that crosses both one branch and the trunk."),
        initial_plane=PlaneState(m1=-0.5),
        initial_camera=CameraState(azimuth=0.0, elevation=0.0),
        controls=_ALL_SLIDERS,
        goal=GoalSpec("trunk_branch_oval", {}),
        help_rules=(
            HelpRule("not_tilted", "Rotate the plane so a single slanted cut can run "
                                   "through a branch and the trunk together."),
            HelpRule("generic", "Combine moving and rotating: a slanted plane can "
                                "cross the trunk and one branch in one oval."),
        ),
        solution=(_step(SET_R2, -20.0), _step(SET_R2, -45.0), _step(SET_M1, 0.1),
                  _step(TOGGLE_CROSS_SECTION)),
    ),
    "L3T1": TaskSpec(
        task_id="L3T1", level=3, difficulty=6, shape_id="potato_hole",
        prompt=("Adjust the plane so that the hole in the object creates a "
                "circular cross section (surrounded by an oval-ish cross "
                "section for the outside of the shape). Place the plane "
                "through the fattest part of the shape."),
        initial_plane=PlaneState(),
        initial_camera=CameraState(azimuth=0.0, elevation=10.0),
        controls=_ALL_SLIDERS,
        goal=GoalSpec("nested_hole_circle", {"max_inner_ratio": 1.20,
                                             "factor": 0.90,
                                             "sweep_axis": "x",
                                             "sweep_samples": 256}),
        help_rules=(
            HelpRule("hole_not_visible", "Rotate the view left or right until you "
                                         "can see the hole through the object."),
            HelpRule("plane_not_tilted", "Rotate the plane so it passes straight "
                                         "through the hole."),
            HelpRule("generic", "Aim the plane through the hole at the fattest part "
                                "of the shape, and check the cross-section."),
        ),
        solution=(_step(VIEW_LEFT), _step(VIEW_LEFT), _step(VIEW_LEFT),
                  _step(VIEW_LEFT), _step(VIEW_LEFT), _step(VIEW_LEFT),
                  _step(SET_R2, -40.0), _step(SET_R2, -75.0),
                  _step(TOGGLE_CROSS_SECTION)),
    ),
}
