"""Test-item generation for the three cross-section question categories.

Category 1: pick the contour produced by a given shape + plane.
Category 2: pick the plane that produced a given contour.
Category 3: pick the contour sequence produced by a plane sweep.

Distractors come from seeded plane perturbations (or other shapes); every
option pair must differ by at least DISTINCT_MIN under the contour metric,
and the keyed answer must match a re-slice within MATCH_TOL.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

import numpy as np

from .errors import DistinctnessUnreachable, InvalidSpec
from .geometry.mesh import LabeledMesh, Plane
from .geometry.slicing import CrossSection, slice_mesh
from .geometry.svg_export import cross_section_svg
from .shapes import SHAPE_IDS, capped_cylinder, catalog_mesh, uv_sphere
from .tasks.bundle import canonical_json

MATCH_TOL = 0.05
DISTINCT_MIN = 0.15
MAX_ATTEMPTS = 64

# Perturbation ranges for distractor planes.
ROT_RANGE = (20.0, 60.0)     # degrees
TRANS_RANGE = (0.2, 0.6)     # object units along the normal

ASSESSMENT_SHAPES = SHAPE_IDS + ("sphere", "cylinder")


def assessment_mesh(shape_id: str) -> LabeledMesh:
    if shape_id == "sphere":
        return _sphere()
    if shape_id == "cylinder":
        return _cylinder()
    return catalog_mesh(shape_id)


_CACHE: dict[str, LabeledMesh] = {}


def _sphere() -> LabeledMesh:
    if "sphere" not in _CACHE:
        _CACHE["sphere"] = uv_sphere(0.9, 96)
    return _CACHE["sphere"]


def _cylinder() -> LabeledMesh:
    if "cylinder" not in _CACHE:
        _CACHE["cylinder"] = capped_cylinder(0.5, 0.9, 96)
    return _CACHE["cylinder"]


@dataclass
class TestItem:
    category: int
    shape_id: str
    stimulus: dict
    options: list
    correct: int
    seed: int
    control_of: int | None = None   # index of the duplicated item, for controls

    def to_dict(self) -> dict:
        d = {"category": self.category, "shape_id": self.shape_id,
             "stimulus": self.stimulus, "options": self.options,
             "correct": self.correct, "seed": self.seed}
        if self.control_of is not None:
            d["control_of"] = self.control_of
        return d


# ---------------------------------------------------------------------------
# Contour metric
# ---------------------------------------------------------------------------

def contour_metrics(section: CrossSection) -> dict:
    return {
        "loop_count": section.loop_count,
        "total_area": section.total_area(),
        "max_axis_ratio": max((m.axis_ratio for m in section.metrics), default=0.0),
    }


def metric_distance(a: dict, b: dict) -> float:
    """Normalized distance over (loop count, area, axis ratio); >= 1 when the
    loop counts differ."""
    if a["loop_count"] != b["loop_count"]:
        return 1.0
    if a["loop_count"] == 0:
        return 0.0
    area = abs(a["total_area"] - b["total_area"]) / max(a["total_area"], b["total_area"])
    ratio = abs(a["max_axis_ratio"] - b["max_axis_ratio"]) / max(
        a["max_axis_ratio"], b["max_axis_ratio"])
    return max(area, ratio)


def _sequence_distance(a: list[dict], b: list[dict]) -> float:
    """Largest positionwise metric distance between two contour sequences."""
    return max(metric_distance(x, y) for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# Plane perturbations
# ---------------------------------------------------------------------------

def _rotate_about(v: np.ndarray, axis: np.ndarray, angle_rad: float) -> np.ndarray:
    axis = axis / np.linalg.norm(axis)
    c, s = np.cos(angle_rad), np.sin(angle_rad)
    return v * c + np.cross(axis, v) * s + axis * (axis @ v) * (1 - c)


def perturb_plane(plane: Plane, rng: np.random.Generator) -> Plane:
    """Seeded distractor plane: rotated by +-[20, 60] degrees about a random
    in-plane axis, translated by +-[0.2, 0.6] along its normal, or both."""
    mode = rng.integers(0, 3)
    origin = plane.origin.copy()
    normal = plane.normal.copy()
    if mode in (0, 2):
        u, v = plane.basis()
        phi = rng.uniform(0.0, 2.0 * np.pi)
        axis = np.cos(phi) * u + np.sin(phi) * v
        angle = np.deg2rad(rng.uniform(*ROT_RANGE)) * rng.choice([-1.0, 1.0])
        normal = _rotate_about(normal, axis, angle)
    if mode in (1, 2):
        origin = origin + rng.uniform(*TRANS_RANGE) * rng.choice([-1.0, 1.0]) * normal
    return Plane(origin, normal / np.linalg.norm(normal))


def _slice_metrics(mesh: LabeledMesh, plane: Plane) -> tuple[CrossSection, dict]:
    section = slice_mesh(mesh, plane)
    return section, contour_metrics(section)


def _option_payload(section: CrossSection, plane: Plane, metrics: dict) -> dict:
    return {"svg": cross_section_svg(section, plane),
            "metrics": metrics, "plane": plane.to_dict()}


def _shuffle_with_correct(options: list, rng: np.random.Generator) -> tuple[list, int]:
    order = rng.permutation(len(options))
    shuffled = [options[i] for i in order]
    return shuffled, int(np.flatnonzero(order == 0)[0])


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def gen_item_cat1(shape_id: str, plane: Plane, n_options: int, seed: int) -> TestItem:
    """Correct contour + perturbed-plane (or other-shape) distractor contours."""
    if n_options < 3:
        raise InvalidSpec(f"n_options {n_options} < 3")
    rng = np.random.default_rng(seed)
    mesh = assessment_mesh(shape_id)
    section, correct_metrics = _slice_metrics(mesh, plane)
    if section.loop_count == 0:
        raise InvalidSpec("stimulus plane misses the shape")
    options = [_option_payload(section, plane, correct_metrics)]
    taken = [correct_metrics]
    while len(options) < n_options:
        for attempt in range(MAX_ATTEMPTS + 1):
            if attempt == MAX_ATTEMPTS:
                raise DistinctnessUnreachable(
                    f"cat1 option {len(options)} after {MAX_ATTEMPTS} attempts")
            if rng.random() < 0.85:
                cand_mesh, cand_plane = mesh, perturb_plane(plane, rng)
            else:
                other = ASSESSMENT_SHAPES[rng.integers(0, len(ASSESSMENT_SHAPES))]
                cand_mesh, cand_plane = assessment_mesh(other), perturb_plane(plane, rng)
            cand_section, cand_metrics = _slice_metrics(cand_mesh, cand_plane)
            if cand_section.loop_count == 0:
                continue
            if all(metric_distance(cand_metrics, m) >= DISTINCT_MIN for m in taken):
                options.append(_option_payload(cand_section, cand_plane, cand_metrics))
                taken.append(cand_metrics)
                break
    shuffled, correct = _shuffle_with_correct(options, rng)
    return TestItem(category=1, shape_id=shape_id,
                    stimulus={"shape_id": shape_id, "plane": plane.to_dict()},
                    options=shuffled, correct=correct, seed=seed)


def gen_item_cat2(shape_id: str, target_plane: Plane, n_options: int,
                  seed: int) -> TestItem:
    """Stimulus contour + candidate planes; only the target reproduces it."""
    if n_options < 3:
        raise InvalidSpec(f"n_options {n_options} < 3")
    rng = np.random.default_rng(seed)
    mesh = assessment_mesh(shape_id)
    section, stim_metrics = _slice_metrics(mesh, target_plane)
    if section.loop_count == 0:
        raise InvalidSpec("stimulus plane misses the shape")
    options = [{"plane": target_plane.to_dict(), "metrics": stim_metrics}]
    taken = [stim_metrics]
    while len(options) < n_options:
        for attempt in range(MAX_ATTEMPTS + 1):
            if attempt == MAX_ATTEMPTS:
                raise DistinctnessUnreachable(
                    f"cat2 option {len(options)} after {MAX_ATTEMPTS} attempts")
            cand_plane = perturb_plane(target_plane, rng)
            cand_section, cand_metrics = _slice_metrics(mesh, cand_plane)
            if cand_section.loop_count == 0:
                continue
            if all(metric_distance(cand_metrics, m) >= DISTINCT_MIN for m in taken):
                options.append({"plane": cand_plane.to_dict(), "metrics": cand_metrics})
                taken.append(cand_metrics)
                break
    shuffled, correct = _shuffle_with_correct(options, rng)
    return TestItem(category=2, shape_id=shape_id,
                    stimulus={"shape_id": shape_id,
                              "contour_svg": cross_section_svg(section, target_plane),
                              "metrics": stim_metrics},
                    options=shuffled, correct=correct, seed=seed)


def gen_item_cat3(shape_id: str, plane_sequence: list[Plane], n_options: int,
                  seed: int) -> TestItem:
    """Correct contour sequence + permuted/substituted distractor sequences."""
    if len(plane_sequence) < 3:
        raise InvalidSpec(f"plane sequence length {len(plane_sequence)} < 3")
    if n_options < 3:
        raise InvalidSpec(f"n_options {n_options} < 3")
    rng = np.random.default_rng(seed)
    mesh = assessment_mesh(shape_id)
    sections = []
    seq_metrics = []
    svgs = []
    for pl in plane_sequence:
        sec, met = _slice_metrics(mesh, pl)
        if sec.loop_count == 0:
            raise InvalidSpec("a sequence plane misses the shape")
        sections.append(sec)
        seq_metrics.append(met)
        svgs.append(cross_section_svg(sec, pl))

    options = [{"svgs": svgs, "metrics_seq": seq_metrics}]
    taken = [seq_metrics]
    k = len(plane_sequence)
    while len(options) < n_options:
        for attempt in range(MAX_ATTEMPTS + 1):
            if attempt == MAX_ATTEMPTS:
                raise DistinctnessUnreachable(
                    f"cat3 option {len(options)} after {MAX_ATTEMPTS} attempts")
            if rng.random() < 0.5:
                perm = rng.permutation(k)
                cand_svgs = [svgs[i] for i in perm]
                cand_metrics = [seq_metrics[i] for i in perm]
            else:
                pos = int(rng.integers(0, k))
                cand_plane = perturb_plane(plane_sequence[pos], rng)
                sec, met = _slice_metrics(mesh, cand_plane)
                if sec.loop_count == 0:
                    continue
                cand_svgs = list(svgs)
                cand_metrics = list(seq_metrics)
                cand_svgs[pos] = cross_section_svg(sec, cand_plane)
                cand_metrics[pos] = met
            if all(_sequence_distance(cand_metrics, m) >= DISTINCT_MIN for m in taken):
                options.append({"svgs": cand_svgs, "metrics_seq": cand_metrics})
                taken.append(cand_metrics)
                break
    shuffled, correct = _shuffle_with_correct(options, rng)
    return TestItem(category=3, shape_id=shape_id,
                    stimulus={"shape_id": shape_id,
                              "planes": [pl.to_dict() for pl in plane_sequence]},
                    options=shuffled, correct=correct, seed=seed)


# ---------------------------------------------------------------------------
# Item bank
# ---------------------------------------------------------------------------

def _stimulus_plane(shape_id: str, rng: np.random.Generator) -> Plane:
    """A seeded plane guaranteed to hit the shape with a clean section."""
    mesh = assessment_mesh(shape_id)
    for _ in range(MAX_ATTEMPTS):
        n = rng.normal(size=3)
        n /= np.linalg.norm(n)
        origin = rng.uniform(-0.35, 0.35, size=3)
        plane = Plane(origin, n)
        if slice_mesh(mesh, plane).loop_count > 0:
            return plane
    raise DistinctnessUnreachable(f"no slicing plane found for {shape_id}")


_BANK_SHAPES = ("sphere", "cylinder", "hourglass", "taper", "y_branch",
                "potato_hole")


def build_item_bank(counts: tuple[int, int, int] = (12, 6, 4), n_options: int = 4,
                    n_controls: int = 4, seed: int = 0) -> list[TestItem]:
    """Assemble an item bank with the 12/6/4 category composition plus
    consistency-control duplicates (same item, reshuffled options)."""
    rng = np.random.default_rng(seed)
    items: list[TestItem] = []
    for cat, count in zip((1, 2, 3), counts):
        for k in range(count):
            shape_id = _BANK_SHAPES[int(rng.integers(0, len(_BANK_SHAPES)))]
            item_seed = int(rng.integers(0, 2**31 - 1))
            srng = np.random.default_rng(item_seed)
            if cat == 1:
                plane = _stimulus_plane(shape_id, srng)
                items.append(gen_item_cat1(shape_id, plane, n_options, item_seed))
            elif cat == 2:
                plane = _stimulus_plane(shape_id, srng)
                items.append(gen_item_cat2(shape_id, plane, n_options, item_seed))
            else:
                axis = np.array([0.0, 1.0, 0.0])
                mesh = assessment_mesh(shape_id)
                proj = mesh.vertices @ axis
                lo, hi = float(proj.min()), float(proj.max())
                offs = np.linspace(lo + 0.15 * (hi - lo), hi - 0.15 * (hi - lo), 4)
                planes = [Plane(o * axis, axis) for o in offs]
                items.append(gen_item_cat3(shape_id, planes, n_options, item_seed))

    # Controls: duplicated items with reshuffled option order.
    n_items = len(items)
    for k in range(n_controls):
        src_idx = int(rng.integers(0, n_items))
        src = items[src_idx]
        order = rng.permutation(len(src.options))
        options = [src.options[i] for i in order]
        correct = int(np.flatnonzero(order == src.correct)[0])
        items.append(TestItem(category=src.category, shape_id=src.shape_id,
                              stimulus=src.stimulus, options=options,
                              correct=correct, seed=src.seed, control_of=src_idx))
    return items


def export_item_bank(items: list[TestItem], out_dir: str | os.PathLike,
                     seed: int = 0) -> list[str]:
    """Write option SVGs plus a JSON manifest; returns the written paths."""
    os.makedirs(out_dir, exist_ok=True)
    written: list[str] = []
    manifest_items = []
    for idx, item in enumerate(items):
        entry = item.to_dict()
        entry["id"] = f"item_{idx:03d}"
        for j, opt in enumerate(entry["options"]):
            opt = dict(opt)
            svg_keys = [k for k in ("svg", "svgs") if k in opt]
            for key in svg_keys:
                if key == "svg":
                    name = f"item_{idx:03d}_opt{j}.svg"
                    path = os.path.join(out_dir, name)
                    with open(path, "w") as fh:
                        fh.write(opt.pop("svg"))
                    written.append(path)
                    opt["svg_file"] = name
                else:
                    names = []
                    for s, svg in enumerate(opt.pop("svgs")):
                        name = f"item_{idx:03d}_opt{j}_{s}.svg"
                        path = os.path.join(out_dir, name)
                        with open(path, "w") as fh:
                            fh.write(svg)
                        written.append(path)
                        names.append(name)
                    opt["svg_files"] = names
            entry["options"][j] = opt
        if "contour_svg" in entry["stimulus"]:
            entry["stimulus"] = dict(entry["stimulus"])
            name = f"item_{idx:03d}_stimulus.svg"
            path = os.path.join(out_dir, name)
            with open(path, "w") as fh:
                fh.write(entry["stimulus"].pop("contour_svg"))
            written.append(path)
            entry["stimulus"]["contour_svg_file"] = name
        manifest_items.append(entry)
    manifest = {"seed": seed, "n_items": len(items), "items": manifest_items}
    manifest_path = os.path.join(out_dir, "manifest.json")
    with open(manifest_path, "w") as fh:
        fh.write(canonical_json(manifest) + "\n")
    written.append(manifest_path)
    return written
