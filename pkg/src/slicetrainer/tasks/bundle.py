"""Task-definition JSON bundle shared by the CLI and the UI."""

from __future__ import annotations

import hashlib
import json

from ..errors import VersionMismatch
from ..shapes import shape_catalog
from .engine import TaskLibrary, default_library

SCHEMA_VERSION = 1


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def build_bundle(library: TaskLibrary | None = None) -> dict:
    """Emit all task specs (with resolved goal references), shape catalog,
    and a content hash. Scores never appear here."""
    library = library or default_library()
    tasks = []
    for task_id in library.task_ids():
        spec = library.spec(task_id)
        tasks.append({
            "task_id": spec.task_id,
            "level": spec.level,
            "difficulty": spec.difficulty,
            "shape_id": spec.shape_id,
            "prompt": spec.prompt,
            "initial_plane": spec.initial_plane.to_dict(),
            "initial_camera": spec.initial_camera.to_dict(),
            "controls": spec.controls.to_dict(),
            "goal": spec.goal.to_dict(),
            "help_rules": [{"rule_id": r.rule_id, "text": r.text}
                           for r in spec.help_rules],
            "solution": [s.to_dict() for s in spec.solution],
        })
    bundle = {
        "schema_version": SCHEMA_VERSION,
        "task_order": list(library.task_ids()),
        "tutorial_shape_id": "tutorial_capsule",
        "tasks": tasks,
        "shapes": [s.to_dict() for s in shape_catalog()],
    }
    bundle["bundle_hash"] = bundle_hash(bundle)
    return bundle


def bundle_hash(bundle: dict) -> str:
    payload = {k: v for k, v in bundle.items() if k != "bundle_hash"}
    return hashlib.sha256(canonical_json(payload).encode()).hexdigest()


def bundle_json(library: TaskLibrary | None = None) -> str:
    return canonical_json(build_bundle(library)) + "\n"


def verify_bundle(bundle: dict):
    if bundle.get("schema_version") != SCHEMA_VERSION:
        raise VersionMismatch(f"bundle schema {bundle.get('schema_version')} != {SCHEMA_VERSION}")
    if bundle_hash(bundle) != bundle.get("bundle_hash"):
        raise VersionMismatch("bundle hash does not match its content")
