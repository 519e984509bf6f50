"""Task engine: slider-to-plane mapping, control handling, goal predicates,
state-dependent help, scoring, and the play/solution session flow."""

from __future__ import annotations

from dataclasses import replace
from functools import lru_cache

import numpy as np

from ..errors import ControlNotAvailable, SessionComplete, UnknownTask
from ..geometry.mesh import LabeledMesh, Plane
from ..geometry.slicing import (
    DEFAULT_THRESHOLDS,
    CrossSection,
    classify_loop,
    slice_mesh,
)
from ..geometry.svg_export import cross_section_svg
from ..shapes import catalog_mesh, sweep_areas
from . import definitions
from .model import (
    COMPLETE_TASK,
    ControlEvent,
    GoalResult,
    GoalSpec,
    HELP_REQUEST,
    MOVE_KINDS,
    NEXT_TASK,
    ROTATE_KINDS,
    SHOW_ANSWER,
    Script,
    ScoreRecord,
    TaskSpec,
    TaskState,
    TOGGLE_CROSS_SECTION,
    VIEW_DOWN,
    VIEW_LEFT,
    VIEW_LR_KINDS,
    VIEW_RIGHT,
    VIEW_STEP,
    VIEW_UD_KINDS,
    VIEW_UP,
    initial_state,
)

SHAPE_CENTER = np.zeros(3)


def plane_pose(p, shape_center: np.ndarray = SHAPE_CENTER) -> Plane:
    """Slider state -> geometric plane.

    normal = Rz(r2) . Rx(r1) . (+Y); origin = center + m1*(+Y) + m2*(+X).
    """
    th = np.deg2rad(p.r1)
    ps = np.deg2rad(p.r2)
    normal = np.array([-np.sin(ps) * np.cos(th),
                       np.cos(ps) * np.cos(th),
                       np.sin(th)])
    origin = np.asarray(shape_center, dtype=float) + np.array([p.m2, p.m1, 0.0])
    return Plane(origin, normal)


def apply_control(state: TaskState, event: ControlEvent) -> TaskState:
    """Apply one control event in place; hidden controls and solution-mode
    mutations raise ControlNotAvailable."""
    kind = event.kind
    mask = state.spec.controls
    if state.mode == "solution" and kind not in (SHOW_ANSWER, NEXT_TASK):
        raise ControlNotAvailable(f"{kind}: controls are frozen in solution mode")
    if state.mode == "play" and kind in (SHOW_ANSWER, NEXT_TASK):
        raise ControlNotAvailable(f"{kind}: only available in solution mode")

    if kind in MOVE_KINDS:
        if not mask.move_sliders:
            raise ControlNotAvailable(f"{kind}: movement sliders hidden")
        state.plane.set(kind[len("set_"):], float(event.value))
    elif kind in ROTATE_KINDS:
        if not mask.rotate_sliders:
            raise ControlNotAvailable(f"{kind}: rotation sliders hidden")
        state.plane.set(kind[len("set_"):], float(event.value))
    elif kind in VIEW_LR_KINDS:
        if not mask.view_left_right:
            raise ControlNotAvailable(f"{kind}: left/right view buttons hidden")
        state.camera.turn(-VIEW_STEP if kind == VIEW_LEFT else VIEW_STEP)
    elif kind in VIEW_UD_KINDS:
        if not mask.view_up_down:
            raise ControlNotAvailable(f"{kind}: up/down view buttons hidden")
        state.camera.tilt(VIEW_STEP if kind == VIEW_UP else -VIEW_STEP)
    elif kind == TOGGLE_CROSS_SECTION:
        if not mask.cross_section_toggle:
            raise ControlNotAvailable("cross-section toggle hidden")
        state.cross_section_visible = not state.cross_section_visible
    elif kind in (HELP_REQUEST, COMPLETE_TASK, SHOW_ANSWER, NEXT_TASK):
        pass  # no state change here; the session handles their effects
    else:
        raise ControlNotAvailable(f"unknown control kind {kind!r}")
    return state


# ---------------------------------------------------------------------------
# Goal predicates
# ---------------------------------------------------------------------------

def _diagnostics(section: CrossSection) -> dict:
    return {
        "loop_count": section.loop_count,
        "areas": [m.area for m in section.metrics],
        "axis_ratios": [m.axis_ratio for m in section.metrics],
        "parts": [sorted(p) for p in section.parts],
        "nesting_depths": [section.depth(i) for i in range(section.loop_count)],
    }


def _goal_min_area_band(section: CrossSection, params: dict) -> bool:
    return (section.loop_count == 1
            and section.metrics[0].area <= params["factor"] * params["reference_area"])


def _goal_max_area_band(section: CrossSection, params: dict) -> bool:
    return (section.loop_count == 1
            and section.metrics[0].area >= params["factor"] * params["reference_area"])


def _goal_single_oval(section: CrossSection, params: dict) -> bool:
    return (section.loop_count == 1
            and classify_loop(section.metrics[0], DEFAULT_THRESHOLDS) == "oval")


def _goal_two_branch_loops(section: CrossSection, params: dict) -> bool:
    if section.loop_count != 2 or any(p is not None for p in section.parent):
        return False
    return {frozenset(p) for p in section.parts} == {frozenset({"branch_left"}),
                                                     frozenset({"branch_right"})}


def _goal_trunk_branch_oval(section: CrossSection, params: dict) -> bool:
    if section.loop_count != 1:
        return False
    parts = section.parts[0]
    branches = parts & {"branch_left", "branch_right"}
    return ("stem" in parts and len(branches) == 1
            and classify_loop(section.metrics[0], DEFAULT_THRESHOLDS) == "oval")


def _goal_nested_hole_circle(section: CrossSection, params: dict) -> bool:
    if section.loop_count != 2:
        return False
    roots = section.roots()
    if len(roots) != 1:
        return False
    outer = roots[0]
    inner = 1 - outer
    if section.parent[inner] != outer:
        return False
    return (section.parts[inner] <= {"hole_surface"}
            and section.metrics[inner].axis_ratio <= params["max_inner_ratio"]
            and section.metrics[outer].area >= params["factor"] * params["reference_area"])


_GOAL_PREDICATES = {
    "min_area_band": _goal_min_area_band,
    "max_area_band": _goal_max_area_band,
    "single_oval": _goal_single_oval,
    "two_branch_loops": _goal_two_branch_loops,
    "trunk_branch_oval": _goal_trunk_branch_oval,
    "nested_hole_circle": _goal_nested_hole_circle,
}


def evaluate_goal(spec: TaskSpec, state: TaskState, mesh: LabeledMesh) -> GoalResult:
    """Slice at the current plane pose and check the task's predicate.

    Specs must carry resolved goal params (see TaskLibrary) for the
    band-style goals that compare against precomputed sweep extremes.
    """
    section = slice_mesh(mesh, plane_pose(state.plane))
    satisfied = _GOAL_PREDICATES[spec.goal.kind](section, spec.goal.params)
    return GoalResult(satisfied=bool(satisfied), diagnostics=_diagnostics(section))


def max_root_loop_area(mesh: LabeledMesh, axis: np.ndarray, samples: int) -> float:
    """Largest root (outer) loop area over a bin-center sweep along axis."""
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    proj = mesh.vertices @ axis
    lo, hi = float(proj.min()), float(proj.max())
    step = (hi - lo) / samples
    best = 0.0
    for i in range(samples):
        off = lo + (i + 0.5) * step
        section = slice_mesh(mesh, Plane(off * axis, axis))
        for j in section.roots():
            best = max(best, section.metrics[j].area)
    return best


# ---------------------------------------------------------------------------
# Help rules
# ---------------------------------------------------------------------------

def _azimuth_delta(az: float, ref: float) -> float:
    return abs((az - ref + 180.0) % 360.0 - 180.0)


def _rule_matches(rule_id: str, spec: TaskSpec, state: TaskState) -> bool:
    p = state.plane
    if rule_id == "generic":
        return True
    if rule_id == "far_from_waist":
        return abs(p.m1) > 0.45
    if rule_id == "not_at_base":
        return p.m1 > -0.6
    if rule_id == "still_flat":
        return abs(p.r1) < 15.0 and abs(p.r2) < 15.0
    if rule_id == "below_bifurcation":
        return p.m1 < 0.3
    if rule_id == "not_tilted":
        return abs(p.r1) < 20.0 and abs(p.r2) < 20.0
    if rule_id == "hole_not_visible":
        return _azimuth_delta(state.camera.azimuth,
                              spec.initial_camera.azimuth) <= 30.0
    if rule_id == "plane_not_tilted":
        return abs(p.r2) < 30.0
    return False


def hint(spec: TaskSpec, state: TaskState, mesh: LabeledMesh) -> str:
    """Problem-dependent help text; confirms correctness when the goal holds."""
    if evaluate_goal(spec, state, mesh).satisfied:
        return definitions.CONFIRMATION_TEXT
    for rule in spec.help_rules:
        if _rule_matches(rule.rule_id, spec, state):
            return rule.text
    return spec.help_rules[-1].text


# ---------------------------------------------------------------------------
# Task library (specs with resolved sweep references) and sessions
# ---------------------------------------------------------------------------

class TaskLibrary:
    """The six task specs with goal reference areas resolved against the
    catalog meshes (computed once, cached)."""

    def __init__(self):
        self._resolved: dict[str, TaskSpec] = {}

    def task_ids(self) -> tuple[str, ...]:
        return definitions.TASK_ORDER

    def mesh(self, shape_id: str) -> LabeledMesh:
        return catalog_mesh(shape_id)

    def spec(self, task_id: str) -> TaskSpec:
        if task_id not in definitions.TASKS:
            raise UnknownTask(task_id)
        if task_id not in self._resolved:
            self._resolved[task_id] = self._resolve(definitions.TASKS[task_id])
        return self._resolved[task_id]

    def _resolve(self, spec: TaskSpec) -> TaskSpec:
        params = dict(spec.goal.params)
        if spec.goal.kind in ("min_area_band", "max_area_band", "nested_hole_circle") \
                and "reference_area" not in params:
            mesh = self.mesh(spec.shape_id)
            axis = {"x": [1.0, 0, 0], "y": [0, 1.0, 0], "z": [0, 0, 1.0]}[params["sweep_axis"]]
            samples = params["sweep_samples"]
            if spec.goal.kind == "min_area_band":
                params["reference_area"] = sweep_areas(mesh, axis, samples).min_area()
            elif spec.goal.kind == "max_area_band":
                params["reference_area"] = sweep_areas(mesh, axis, samples).max_area()
            else:
                params["reference_area"] = max_root_loop_area(mesh, np.asarray(axis), samples)
        return replace(spec, goal=GoalSpec(spec.goal.kind, params))


@lru_cache(maxsize=1)
def default_library() -> TaskLibrary:
    return TaskLibrary()


def next_task_id(task_id: str) -> str | None:
    order = definitions.TASK_ORDER
    if task_id not in order:
        raise UnknownTask(task_id)
    i = order.index(task_id)
    return order[i + 1] if i + 1 < len(order) else None


def load_task(task_id: str, library: TaskLibrary | None = None) -> TaskState:
    library = library or default_library()
    return initial_state(library.spec(task_id))


def solution_script(task_id: str) -> Script:
    if task_id not in definitions.TASKS:
        raise UnknownTask(task_id)
    return definitions.TASKS[task_id].solution


def run_script(task_id: str, mesh: LabeledMesh | None = None,
               library: TaskLibrary | None = None) -> TaskState:
    """Replay a task's solution script from its initial state.

    When a mesh is given, the final state is checked against the task goal
    (scripts must demonstrate a correct answer) and a RuntimeError signals a
    broken script.
    """
    library = library or default_library()
    state = load_task(task_id, library)
    for step in solution_script(task_id):
        apply_control(state, step.event)
    if mesh is not None and not evaluate_goal(state.spec, state, mesh).satisfied:
        raise RuntimeError(f"solution script for {task_id} does not satisfy its goal")
    return state


class Session:
    """One trainee session: owns the live TaskState, scores, and the log."""

    def __init__(self, library: TaskLibrary | None = None, log=None):
        self.library = library or default_library()
        self.log = log
        self.state: TaskState | None = None
        self.scores: list[ScoreRecord] = []
        self._task_started_ms = 0

    # -- logging -----------------------------------------------------------

    def _emit(self, t_ms: int, kind: str, payload: dict | None = None):
        if self.log is not None:
            task_id = self.state.spec.task_id if self.state else None
            self.log.record_fields(t_ms, task_id, kind, payload or {})

    # -- lifecycle ----------------------------------------------------------

    def load_task(self, task_id: str, t_ms: int = 0) -> TaskState:
        self.state = load_task(task_id, self.library)
        self._task_started_ms = t_ms
        self._emit(t_ms, "task_loaded", {})
        return self.state

    def dispatch(self, event: ControlEvent, t_ms: int):
        """Route a control event: sliders/camera/toggle mutate state; the
        lifecycle kinds call their session methods."""
        if self.state is None:
            raise ControlNotAvailable("no task loaded")
        if event.kind == COMPLETE_TASK:
            return self.complete_task(t_ms)
        if event.kind == SHOW_ANSWER:
            return self.show_answer(t_ms)
        if event.kind == NEXT_TASK:
            return self.next_task(t_ms)
        if event.kind == HELP_REQUEST:
            return self.request_help(t_ms)
        apply_control(self.state, event)
        self._emit(t_ms, event.kind, {"value": event.value} if event.value is not None else {})
        return self.state

    def request_help(self, t_ms: int) -> str:
        if self.state.mode != "play":
            raise ControlNotAvailable("help is a play-mode control")
        self._emit(t_ms, HELP_REQUEST, {})
        return hint(self.state.spec, self.state, self.mesh())

    def mesh(self) -> LabeledMesh:
        return self.library.mesh(self.state.spec.shape_id)

    def complete_task(self, t_ms: int) -> ScoreRecord:
        """Score the current state, freeze controls, switch to solution mode.

        Scores are recorded but never surfaced through the UI bundle.
        """
        if self.state.mode != "play":
            raise ControlNotAvailable("task already completed")
        result = evaluate_goal(self.state.spec, self.state, self.mesh())
        points = 100 if result.satisfied else 0
        elapsed_s = max(0.0, (t_ms - self._task_started_ms) / 1000.0)
        self.state.mode = "solution"
        self.state.completed = True
        self.state.elapsed_s = elapsed_s
        section = slice_mesh(self.mesh(), plane_pose(self.state.plane))
        svg = cross_section_svg(section, plane_pose(self.state.plane))
        record = ScoreRecord(task_id=self.state.spec.task_id, points=points,
                             elapsed_s=elapsed_s,
                             final_snapshot={"state": self.state.snapshot(), "svg": svg})
        self.scores.append(record)
        self._emit(t_ms, "task_completed",
                   {"points": points, "elapsed_ms": t_ms - self._task_started_ms,
                    "satisfied": result.satisfied})
        return record

    def show_answer(self, t_ms: int) -> Script:
        if self.state.mode != "solution":
            raise ControlNotAvailable("show answer is a solution-mode control")
        self._emit(t_ms, SHOW_ANSWER, {})
        return self.state.spec.solution

    def next_task(self, t_ms: int) -> TaskState:
        if self.state.mode != "solution":
            raise ControlNotAvailable("next task is a solution-mode control")
        succ = next_task_id(self.state.spec.task_id)
        if succ is None:
            self._emit(t_ms, "session_end", {"total_score": self.total_score()})
            raise SessionComplete("all six tasks completed")
        return self.load_task(succ, t_ms)

    def total_score(self) -> int:
        return sum(r.points for r in self.scores)
