"""Append-only session logging, usage summaries, and deterministic replay.

Format: newline-delimited JSON, one event per line, after a header line
carrying the schema version and the task-bundle hash.  Timestamps come from
the caller, which keeps the core clock-free and replay exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import (
    ControlNotAvailable,
    MalformedLog,
    NonMonotonicTimestamp,
    SessionComplete,
    VersionMismatch,
)
from .tasks.bundle import SCHEMA_VERSION, canonical_json
from .tasks.engine import Session, TaskLibrary, default_library
from .tasks.model import (
    COMPLETE_TASK,
    ControlEvent,
    HELP_REQUEST,
    MOVE_KINDS,
    NEXT_TASK,
    ROTATE_KINDS,
    SHOW_ANSWER,
    ScoreRecord,
    TOGGLE_CROSS_SECTION,
    VIEW_LR_KINDS,
    VIEW_UD_KINDS,
)

LIFECYCLE_KINDS = ("task_loaded", "task_completed", "session_end")

# Feature buckets (the usage-summary columns).
_BUCKET_OF = {}
for k in MOVE_KINDS:
    _BUCKET_OF[k] = "move_plane"
for k in ROTATE_KINDS:
    _BUCKET_OF[k] = "rotate_plane"
for k in VIEW_UD_KINDS:
    _BUCKET_OF[k] = "view_up_down"
for k in VIEW_LR_KINDS:
    _BUCKET_OF[k] = "view_left_right"
_BUCKET_OF[HELP_REQUEST] = "help"
_BUCKET_OF[SHOW_ANSWER] = "show_answer"
_BUCKET_OF[TOGGLE_CROSS_SECTION] = "check_cross_section"

BUCKETS = ("help", "move_plane", "rotate_plane", "view_up_down",
           "view_left_right", "show_answer", "check_cross_section")


@dataclass(frozen=True)
class LogEvent:
    t: int
    task_id: str | None
    kind: str
    payload: dict

    def to_dict(self) -> dict:
        return {"t": self.t, "task_id": self.task_id, "kind": self.kind,
                "payload": self.payload}


@dataclass
class UsageSummary:
    """Per-feature interaction counts plus per-task points and times."""

    counts: dict = field(default_factory=lambda: {b: 0 for b in BUCKETS})
    per_task: dict = field(default_factory=dict)   # task_id -> {points, elapsed_s}
    total_score: int = 0

    def to_dict(self) -> dict:
        return {"counts": dict(self.counts), "per_task": dict(self.per_task),
                "total_score": self.total_score}


class SessionLog:
    """Append-only event stream with a monotonic-timestamp guard."""

    def __init__(self, bundle_hash: str = ""):
        self.bundle_hash = bundle_hash
        self.events: list[LogEvent] = []

    def record(self, event: LogEvent) -> "SessionLog":
        if self.events and event.t < self.events[-1].t:
            raise NonMonotonicTimestamp(
                f"t={event.t} earlier than last t={self.events[-1].t}")
        self.events.append(event)
        return self

    def record_fields(self, t: int, task_id: str | None, kind: str,
                      payload: dict | None = None) -> "SessionLog":
        return self.record(LogEvent(int(t), task_id, kind, payload or {}))

    def __len__(self) -> int:
        return len(self.events)

    # -- serialization -------------------------------------------------------

    def to_ndjson(self) -> str:
        header = {"schema_version": SCHEMA_VERSION, "bundle_hash": self.bundle_hash,
                  "kind": "header"}
        lines = [canonical_json(header)]
        lines += [canonical_json(e.to_dict()) for e in self.events]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_ndjson(cls, text: str) -> "SessionLog":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise MalformedLog("empty log")
        try:
            header = json.loads(lines[0])
        except json.JSONDecodeError as exc:
            raise MalformedLog(f"bad header line: {exc}") from exc
        if header.get("kind") != "header":
            raise MalformedLog("first line is not a header")
        if header.get("schema_version") != SCHEMA_VERSION:
            raise VersionMismatch(
                f"log schema {header.get('schema_version')} != {SCHEMA_VERSION}")
        log = cls(bundle_hash=header.get("bundle_hash", ""))
        for i, line in enumerate(lines[1:], start=2):
            try:
                d = json.loads(line)
                log.record(LogEvent(int(d["t"]), d.get("task_id"), d["kind"],
                                    d.get("payload", {})))
            except NonMonotonicTimestamp:
                raise
            except Exception as exc:
                raise MalformedLog(f"line {i}: {exc}") from exc
        return log


def summarize(log: SessionLog) -> UsageSummary:
    """Bucket control events into feature counts; collect scores and times."""
    summary = UsageSummary()
    for e in log.events:
        if e.kind in _BUCKET_OF:
            summary.counts[_BUCKET_OF[e.kind]] += 1
        elif e.kind == "task_completed":
            if "points" not in e.payload or "elapsed_ms" not in e.payload:
                raise MalformedLog(f"task_completed at t={e.t} missing payload")
            summary.per_task[e.task_id] = {
                "points": int(e.payload["points"]),
                "elapsed_s": e.payload["elapsed_ms"] / 1000.0,
            }
        elif e.kind in LIFECYCLE_KINDS or e.kind in (COMPLETE_TASK, NEXT_TASK):
            pass
        else:
            raise MalformedLog(f"unknown event kind {e.kind!r} at t={e.t}")
    summary.total_score = sum(v["points"] for v in summary.per_task.values())
    if summary.total_score > 600:
        raise MalformedLog(f"total score {summary.total_score} > 600")
    return summary


def summary_csv(summary: UsageSummary) -> str:
    """One CSV row in the feature-usage column order:
    Score, Help, Move Plane, Rotate Plane, Change View Up/down, Show Answer,
    Check Cross-section."""
    header = ("Score,Help,Move Plane,Rotate Plane,Change View Up/down,"
              "Show Answer,Check Cross-section")
    c = summary.counts
    row = (f"{summary.total_score},{c['help']},{c['move_plane']},"
           f"{c['rotate_plane']},{c['view_up_down']},{c['show_answer']},"
           f"{c['check_cross_section']}")
    return header + "\n" + row + "\n"


@dataclass
class ReplayResult:
    final_snapshots: dict           # task_id -> snapshot dict
    scores: list[ScoreRecord]
    summary: UsageSummary

    def total_score(self) -> int:
        return sum(r.points for r in self.scores)


def replay(log: SessionLog, library: TaskLibrary | None = None,
           bundle_hash: str | None = None) -> ReplayResult:
    """Re-drive a session from its log; reproduces states and scores exactly.

    Raises VersionMismatch when the log was recorded against a different
    bundle, and surfaces ControlNotAvailable with the offending event index.
    """
    library = library or default_library()
    if bundle_hash is not None and log.bundle_hash and log.bundle_hash != bundle_hash:
        raise VersionMismatch("log bundle hash does not match the task bundle")
    session = Session(library=library, log=None)
    snapshots: dict = {}
    for i, e in enumerate(log.events):
        try:
            if e.kind == "task_loaded":
                session.load_task(e.task_id, e.t)
            elif e.kind == "task_completed":
                record = session.complete_task(e.t)
                snapshots[e.task_id] = record.final_snapshot
                if "points" in e.payload and record.points != e.payload["points"]:
                    raise MalformedLog(
                        f"event {i}: replayed points {record.points} != "
                        f"logged {e.payload['points']}")
            elif e.kind == "session_end":
                break
            elif e.kind == NEXT_TASK:
                try:
                    session.next_task(e.t)
                except SessionComplete:
                    break
            elif e.kind in (HELP_REQUEST, SHOW_ANSWER):
                session.dispatch(ControlEvent(e.kind), e.t)
            else:
                value = e.payload.get("value")
                session.dispatch(ControlEvent(e.kind, value), e.t)
        except ControlNotAvailable as exc:
            raise ControlNotAvailable(f"event {i} (t={e.t}): {exc}") from exc
    return ReplayResult(final_snapshots=snapshots, scores=session.scores,
                        summary=summarize(log))
