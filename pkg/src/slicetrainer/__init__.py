"""slicetrainer: cross-section training toolkit.

Geometry kernel (slice / clip-and-cap / loop analysis), procedural labeled
shapes, the six-task training engine, append-only session logging with
deterministic replay, and assessment item generation.
"""

from .geometry import (
    ClassifierThresholds,
    CrossSection,
    CutawayMesh,
    LabeledMesh,
    Loop,
    LoopMetrics,
    Plane,
    build_nesting,
    classify_loop,
    clip_and_cap,
    compute_metrics,
    cross_section_svg,
    load_obj,
    loop_parts,
    mesh_to_obj,
    save_obj,
    slice_mesh,
)
from .shapes import (
    ShapeSpec,
    SweepProfile,
    catalog_mesh,
    make_shape,
    shape_catalog,
    sweep_areas,
)

__version__ = "0.1.0"

__all__ = [
    "ClassifierThresholds",
    "CrossSection",
    "CutawayMesh",
    "LabeledMesh",
    "Loop",
    "LoopMetrics",
    "Plane",
    "ShapeSpec",
    "SweepProfile",
    "build_nesting",
    "catalog_mesh",
    "classify_loop",
    "clip_and_cap",
    "compute_metrics",
    "cross_section_svg",
    "load_obj",
    "loop_parts",
    "make_shape",
    "mesh_to_obj",
    "save_obj",
    "shape_catalog",
    "slice_mesh",
    "sweep_areas",
]
