"""Headless command-line harness for the whole toolkit.

Exit codes: 0 success, 1 domain error (error name on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .assessment import build_item_bank, export_item_bank
from .errors import SessionComplete, SliceTrainerError
from .geometry.mesh import Plane
from .geometry.obj_io import save_obj
from .geometry.slicing import classify_loop, slice_mesh
from .geometry.svg_export import cross_section_svg
from .sessionlog import SessionLog, replay, summary_csv
from .shapes import ShapeSpec, catalog_mesh, catalog_spec, make_shape, shape_catalog, sweep_areas
from .tasks.bundle import build_bundle, bundle_json, canonical_json
from .tasks.engine import Session, default_library, plane_pose
from .tasks.model import PlaneState


@dataclass
class CommandResult:
    exit_code: int
    artifacts: list[str] = field(default_factory=list)
    summary: str = ""


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="slicetrainer",
                                description="Cross-section training toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("shape", help="export a catalog shape as OBJ")
    sp.add_argument("--shape", default=None)
    sp.add_argument("--segments", type=int, default=None)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--obj", default=None)
    sp.add_argument("--catalog", default=None,
                    help="write the shape catalog as a JSON document")

    sl = sub.add_parser("slice", help="slice a shape and report loop metrics")
    sl.add_argument("--shape", required=True)
    sl.add_argument("--m1", type=float, default=0.0)
    sl.add_argument("--m2", type=float, default=0.0)
    sl.add_argument("--r1", type=float, default=0.0)
    sl.add_argument("--r2", type=float, default=0.0)
    sl.add_argument("--svg", default=None)

    sw = sub.add_parser("sweep", help="CSV of slice areas along an axis")
    sw.add_argument("--shape", required=True)
    sw.add_argument("--axis", choices=("x", "y", "z"), default="y")
    sw.add_argument("--samples", type=int, default=512)
    sw.add_argument("--csv", required=True)

    vs = sub.add_parser("validate-solutions",
                        help="run all six solution scripts and check the goals")
    vs.add_argument("--log", default=None, help="record the scripted session here")

    rp = sub.add_parser("replay", help="replay a session log, print the usage summary")
    rp.add_argument("--log", required=True)
    rp.add_argument("--csv", default=None)

    gi = sub.add_parser("gen-items", help="generate an assessment item bank")
    gi.add_argument("--out", required=True)
    gi.add_argument("--seed", type=int, default=0)
    gi.add_argument("--cat1", type=int, default=12)
    gi.add_argument("--cat2", type=int, default=6)
    gi.add_argument("--cat3", type=int, default=4)
    gi.add_argument("--controls", type=int, default=4)

    bu = sub.add_parser("bundle", help="emit the task-definition JSON bundle")
    bu.add_argument("--out", required=True)
    return p


def _cmd_shape(args) -> CommandResult:
    artifacts = []
    if args.catalog:
        with open(args.catalog, "w") as fh:
            fh.write(canonical_json({"shapes": [s.to_dict() for s in shape_catalog()]}) + "\n")
        artifacts.append(args.catalog)
    if args.shape is None:
        if not artifacts:
            print("shape: provide --shape/--obj or --catalog", file=sys.stderr)
            return CommandResult(2)
        return CommandResult(0, artifacts, f"catalog -> {args.catalog}")
    if args.obj is None:
        print("shape: --obj is required with --shape", file=sys.stderr)
        return CommandResult(2)
    spec = catalog_spec(args.shape)
    if args.segments is not None:
        spec = ShapeSpec(spec.shape_id, args.segments, args.segments,
                         spec.seed, spec.part_set)
    if args.seed is not None:
        spec = ShapeSpec(spec.shape_id, spec.radial_segments, spec.axial_segments,
                         args.seed, spec.part_set)
    mesh = make_shape(spec)
    save_obj(mesh, args.obj)
    artifacts.append(args.obj)
    return CommandResult(0, artifacts,
                         f"{args.shape}: {len(mesh.vertices)} vertices, "
                         f"{len(mesh.triangles)} triangles -> {args.obj}")


def _cmd_slice(args) -> CommandResult:
    mesh = catalog_mesh(args.shape)
    plane = plane_pose(PlaneState(args.m1, args.m2, args.r1, args.r2))
    section = slice_mesh(mesh, plane)
    lines = [f"loops: {section.loop_count}"]
    for i, m in enumerate(section.metrics):
        parent = section.parent[i]
        lines.append(f"  loop {i}: area={m.area:.6f} perimeter={m.perimeter:.6f} "
                     f"axis_ratio={m.axis_ratio:.4f} class={classify_loop(m)} "
                     f"parts={sorted(section.parts[i])} "
                     f"parent={'root' if parent is None else parent}")
    report = "\n".join(lines)
    print(report)
    artifacts = []
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(cross_section_svg(section, plane))
        artifacts.append(args.svg)
    return CommandResult(0, artifacts, report.splitlines()[0])


def _cmd_sweep(args) -> CommandResult:
    mesh = catalog_mesh(args.shape)
    axis = {"x": [1.0, 0, 0], "y": [0, 1.0, 0], "z": [0, 0, 1.0]}[args.axis]
    profile = sweep_areas(mesh, axis, args.samples)
    with open(args.csv, "w") as fh:
        fh.write("offset,area\n")
        for off, area in zip(profile.offsets, profile.areas):
            fh.write(f"{float(off)!r},{float(area)!r}\n")
    return CommandResult(0, [args.csv],
                         f"{args.samples} samples along {args.axis} -> {args.csv}")


def _cmd_validate_solutions(args) -> CommandResult:
    library = default_library()
    bundle = build_bundle(library)
    log = SessionLog(bundle_hash=bundle["bundle_hash"]) if args.log else None
    session = Session(library=library, log=log)
    t = 0
    session.load_task(library.task_ids()[0], t)
    lines = []
    all_ok = True
    while True:
        spec = session.state.spec
        for step in spec.solution:
            t += step.dwell_ms
            session.dispatch(step.event, t)
        t += 500
        record = session.complete_task(t)
        ok = record.points == 100
        all_ok &= ok
        lines.append(f"{spec.task_id} {'satisfied' if ok else 'NOT satisfied'}")
        t += 500
        try:
            session.next_task(t)
        except SessionComplete:
            break
    total = session.total_score()
    lines.append(f"total {total}")
    print("\n".join(lines))
    artifacts = []
    if args.log:
        with open(args.log, "w") as fh:
            fh.write(log.to_ndjson())
        artifacts.append(args.log)
    if not all_ok or total != 600:
        return CommandResult(1, artifacts, f"total {total} != 600")
    return CommandResult(0, artifacts, f"6 tasks satisfied, total {total}")


def _cmd_replay(args) -> CommandResult:
    with open(args.log) as fh:
        log = SessionLog.from_ndjson(fh.read())
    bundle = build_bundle(default_library())
    result = replay(log, default_library(), bundle_hash=bundle["bundle_hash"])
    csv_text = summary_csv(result.summary)
    print(csv_text, end="")
    artifacts = []
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(csv_text)
        artifacts.append(args.csv)
    return CommandResult(0, artifacts,
                         f"replayed {len(log.events)} events, "
                         f"total score {result.summary.total_score}")


def _cmd_gen_items(args) -> CommandResult:
    items = build_item_bank((args.cat1, args.cat2, args.cat3),
                            n_controls=args.controls, seed=args.seed)
    written = export_item_bank(items, args.out, seed=args.seed)
    return CommandResult(0, written,
                         f"{len(items)} items ({args.cat1}/{args.cat2}/{args.cat3} "
                         f"+ {args.controls} controls) -> {args.out}")


def _cmd_bundle(args) -> CommandResult:
    text = bundle_json(default_library())
    with open(args.out, "w") as fh:
        fh.write(text)
    return CommandResult(0, [args.out], f"task bundle -> {args.out}")


_COMMANDS = {
    "shape": _cmd_shape,
    "slice": _cmd_slice,
    "sweep": _cmd_sweep,
    "validate-solutions": _cmd_validate_solutions,
    "replay": _cmd_replay,
    "gen-items": _cmd_gen_items,
    "bundle": _cmd_bundle,
}


def run(argv: list[str]) -> CommandResult:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return CommandResult(int(exc.code or 0))
    try:
        return _COMMANDS[args.command](args)
    except SliceTrainerError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return CommandResult(1, [], type(exc).__name__)
    except FileNotFoundError as exc:
        print(f"FileNotFoundError: {exc}", file=sys.stderr)
        return CommandResult(1, [], "FileNotFoundError")


def main():
    sys.exit(run(sys.argv[1:]).exit_code)


if __name__ == "__main__":
    main()
