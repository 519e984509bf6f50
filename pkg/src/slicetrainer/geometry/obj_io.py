"""Wavefront OBJ import/export; part labels travel as group names."""

from __future__ import annotations

import os

import numpy as np

from ..errors import InvalidSpec
from .mesh import LabeledMesh


def mesh_to_obj(mesh: LabeledMesh) -> str:
    """Serialize to OBJ text with one `g` group per part label."""
    lines = [f"# slicetrainer mesh: {len(mesh.vertices)} vertices, "
             f"{len(mesh.triangles)} triangles"]
    for x, y, z in mesh.vertices:
        lines.append(f"v {x:.9g} {y:.9g} {z:.9g}")
    for part in mesh.part_set:
        rows = np.flatnonzero(mesh.part_of == part)
        if rows.size == 0:
            continue
        lines.append(f"g {part}")
        for a, b, c in mesh.triangles[rows] + 1:
            lines.append(f"f {a} {b} {c}")
    return "\n".join(lines) + "\n"


def save_obj(mesh: LabeledMesh, path: str | os.PathLike) -> str:
    text = mesh_to_obj(mesh)
    with open(path, "w") as fh:
        fh.write(text)
    return str(path)


def load_obj(path_or_text: str | os.PathLike) -> LabeledMesh:
    """Parse an OBJ file (v/f/g records; f entries may carry /vt/vn refs)."""
    text = path_or_text
    if isinstance(path_or_text, (str, os.PathLike)) and os.path.exists(path_or_text):
        with open(path_or_text) as fh:
            text = fh.read()
    vertices: list[list[float]] = []
    faces: list[list[int]] = []
    labels: list[str] = []
    group = "body"
    for raw in str(text).splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "v":
            vertices.append([float(t) for t in tokens[1:4]])
        elif tokens[0] == "g":
            group = tokens[1] if len(tokens) > 1 else "body"
        elif tokens[0] == "f":
            idx = [int(t.split("/")[0]) - 1 for t in tokens[1:]]
            if len(idx) < 3:
                raise InvalidSpec(f"face with {len(idx)} vertices")
            for k in range(1, len(idx) - 1):  # fan-triangulate polygons
                faces.append([idx[0], idx[k], idx[k + 1]])
                labels.append(group)
    if not vertices or not faces:
        raise InvalidSpec("OBJ contains no geometry")
    part_set = tuple(sorted(set(labels)))
    return LabeledMesh(np.asarray(vertices, dtype=float),
                       np.asarray(faces, dtype=np.int64),
                       np.asarray(labels, dtype=str), part_set)
