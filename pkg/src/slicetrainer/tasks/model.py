"""Data types for the training state machine."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

# Slider and camera ranges (design constants; clamped on write).
M_RANGE = 1.2          # translation sliders, object units
R_RANGE = 90.0         # rotation sliders, degrees
ELEVATION_RANGE = 85.0
VIEW_STEP = 15.0       # degrees per camera button click


def _clamp(x: float, lo: float, hi: float) -> float:
    return min(max(float(x), lo), hi)


@dataclass
class PlaneState:
    """Slider-space plane parameters; all four clamp to range on write."""

    m1: float = 0.0  # translation along world +Y
    m2: float = 0.0  # translation along world +X
    r1: float = 0.0  # rotation about world X, degrees
    r2: float = 0.0  # rotation about world Z, degrees

    def __post_init__(self):
        self.m1 = _clamp(self.m1, -M_RANGE, M_RANGE)
        self.m2 = _clamp(self.m2, -M_RANGE, M_RANGE)
        self.r1 = _clamp(self.r1, -R_RANGE, R_RANGE)
        self.r2 = _clamp(self.r2, -R_RANGE, R_RANGE)

    def set(self, name: str, value: float):
        lo, hi = (-M_RANGE, M_RANGE) if name.startswith("m") else (-R_RANGE, R_RANGE)
        setattr(self, name, _clamp(value, lo, hi))

    def to_dict(self) -> dict:
        return {"m1": self.m1, "m2": self.m2, "r1": self.r1, "r2": self.r2}

    @classmethod
    def from_dict(cls, d: dict) -> "PlaneState":
        return cls(d["m1"], d["m2"], d["r1"], d["r2"])


@dataclass
class CameraState:
    """Constrained orbit camera: world up stays +Y, elevation clamps."""

    azimuth: float = 0.0
    elevation: float = 0.0
    distance: float = 3.0

    def __post_init__(self):
        self.azimuth = float(self.azimuth) % 360.0
        self.elevation = _clamp(self.elevation, -ELEVATION_RANGE, ELEVATION_RANGE)

    def turn(self, degrees: float):
        self.azimuth = (self.azimuth + degrees) % 360.0

    def tilt(self, degrees: float):
        self.elevation = _clamp(self.elevation + degrees,
                                -ELEVATION_RANGE, ELEVATION_RANGE)

    def eye(self, center: np.ndarray | None = None) -> np.ndarray:
        az = np.deg2rad(self.azimuth)
        el = np.deg2rad(self.elevation)
        offset = self.distance * np.array([np.sin(az) * np.cos(el),
                                           np.sin(el),
                                           np.cos(az) * np.cos(el)])
        return offset if center is None else np.asarray(center) + offset

    def to_dict(self) -> dict:
        return {"azimuth": self.azimuth, "elevation": self.elevation,
                "distance": self.distance}

    @classmethod
    def from_dict(cls, d: dict) -> "CameraState":
        return cls(d["azimuth"], d["elevation"], d["distance"])


@dataclass(frozen=True)
class ControlMask:
    """Per-task visibility of the interactive controls."""

    move_sliders: bool = True
    rotate_sliders: bool = True
    view_left_right: bool = True
    view_up_down: bool = True
    cross_section_toggle: bool = True

    def to_dict(self) -> dict:
        return {"move_sliders": self.move_sliders,
                "rotate_sliders": self.rotate_sliders,
                "view_left_right": self.view_left_right,
                "view_up_down": self.view_up_down,
                "cross_section_toggle": self.cross_section_toggle}


# Control event kinds.
SET_M1, SET_M2, SET_R1, SET_R2 = "set_m1", "set_m2", "set_r1", "set_r2"
VIEW_LEFT, VIEW_RIGHT, VIEW_UP, VIEW_DOWN = "view_left", "view_right", "view_up", "view_down"
TOGGLE_CROSS_SECTION = "toggle_cross_section"
HELP_REQUEST = "help_request"
COMPLETE_TASK = "complete_task"
SHOW_ANSWER = "show_answer"
NEXT_TASK = "next_task"

SLIDER_KINDS = (SET_M1, SET_M2, SET_R1, SET_R2)
MOVE_KINDS = (SET_M1, SET_M2)
ROTATE_KINDS = (SET_R1, SET_R2)
VIEW_LR_KINDS = (VIEW_LEFT, VIEW_RIGHT)
VIEW_UD_KINDS = (VIEW_UP, VIEW_DOWN)
EVENT_KINDS = SLIDER_KINDS + VIEW_LR_KINDS + VIEW_UD_KINDS + (
    TOGGLE_CROSS_SECTION, HELP_REQUEST, COMPLETE_TASK, SHOW_ANSWER, NEXT_TASK)


@dataclass(frozen=True)
class ControlEvent:
    kind: str
    value: float | None = None

    def to_dict(self) -> dict:
        d: dict = {"kind": self.kind}
        if self.value is not None:
            d["value"] = self.value
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ControlEvent":
        return cls(d["kind"], d.get("value"))


@dataclass(frozen=True)
class ScriptStep:
    event: ControlEvent
    dwell_ms: int = 800

    def to_dict(self) -> dict:
        return {"event": self.event.to_dict(), "dwell_ms": self.dwell_ms}

    @classmethod
    def from_dict(cls, d: dict) -> "ScriptStep":
        return cls(ControlEvent.from_dict(d["event"]), d["dwell_ms"])


Script = tuple[ScriptStep, ...]


@dataclass(frozen=True)
class GoalSpec:
    kind: str
    params: dict

    def to_dict(self) -> dict:
        return {"kind": self.kind, "params": dict(self.params)}


@dataclass(frozen=True)
class HelpRule:
    rule_id: str
    text: str


@dataclass(frozen=True)
class TaskSpec:
    task_id: str
    level: int
    difficulty: int
    shape_id: str
    prompt: str
    initial_plane: PlaneState
    initial_camera: CameraState
    controls: ControlMask
    goal: GoalSpec
    help_rules: tuple[HelpRule, ...]
    solution: Script


@dataclass
class TaskState:
    spec: TaskSpec
    plane: PlaneState
    camera: CameraState
    cross_section_visible: bool = False
    mode: str = "play"            # play | solution
    completed: bool = False
    elapsed_s: float = 0.0

    def snapshot(self) -> dict:
        return {"task_id": self.spec.task_id,
                "plane": self.plane.to_dict(),
                "camera": self.camera.to_dict(),
                "cross_section_visible": self.cross_section_visible,
                "mode": self.mode,
                "completed": self.completed}


def initial_state(spec: TaskSpec) -> TaskState:
    return TaskState(spec=spec,
                     plane=replace(spec.initial_plane),
                     camera=replace(spec.initial_camera))


@dataclass
class GoalResult:
    satisfied: bool
    diagnostics: dict = field(default_factory=dict)


@dataclass
class ScoreRecord:
    task_id: str
    points: int
    elapsed_s: float
    final_snapshot: dict
