"""Training state machine: tasks, goals, help, scoring, sessions."""

from .definitions import CONFIRMATION_TEXT, TASK_ORDER, TASKS
from .engine import (
    Session,
    TaskLibrary,
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
from .bundle import build_bundle, bundle_json, canonical_json, verify_bundle
from .model import (
    CameraState,
    ControlEvent,
    ControlMask,
    GoalResult,
    GoalSpec,
    PlaneState,
    ScoreRecord,
    Script,
    ScriptStep,
    TaskSpec,
    TaskState,
)

__all__ = [
    "CONFIRMATION_TEXT",
    "CameraState",
    "ControlEvent",
    "ControlMask",
    "GoalResult",
    "GoalSpec",
    "PlaneState",
    "ScoreRecord",
    "Script",
    "ScriptStep",
    "Session",
    "TASKS",
    "TASK_ORDER",
    "TaskLibrary",
    "TaskSpec",
    "TaskState",
    "apply_control",
    "build_bundle",
    "bundle_json",
    "canonical_json",
    "default_library",
    "evaluate_goal",
    "hint",
    "load_task",
    "next_task_id",
    "plane_pose",
    "run_script",
    "solution_script",
    "verify_bundle",
]
