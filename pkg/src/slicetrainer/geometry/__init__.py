"""Pure geometric kernel: slicing, loop analysis, nesting, clip-and-cap."""

from .mesh import LabeledMesh, Plane, resolve_plane
from .slicing import (
    ClassifierThresholds,
    CrossSection,
    DEFAULT_THRESHOLDS,
    Loop,
    LoopMetrics,
    build_nesting,
    classify_loop,
    compute_metrics,
    loop_parts,
    points_in_polygon,
    signed_area_2d,
    slice_mesh,
)
from .clipping import CutawayMesh, clip_and_cap
from .obj_io import load_obj, mesh_to_obj, save_obj
from .svg_export import cross_section_svg

__all__ = [
    "ClassifierThresholds",
    "CrossSection",
    "CutawayMesh",
    "DEFAULT_THRESHOLDS",
    "LabeledMesh",
    "Loop",
    "LoopMetrics",
    "Plane",
    "build_nesting",
    "classify_loop",
    "clip_and_cap",
    "compute_metrics",
    "cross_section_svg",
    "load_obj",
    "loop_parts",
    "mesh_to_obj",
    "points_in_polygon",
    "resolve_plane",
    "save_obj",
    "signed_area_2d",
    "slice_mesh",
]
