"""Cross-section SVG export: one path per loop, black stroke on white fill."""

from __future__ import annotations

import numpy as np

from .mesh import Plane
from .slicing import CrossSection


def cross_section_svg(section: CrossSection, plane: Plane, size: int = 512,
                      margin: float = 0.05) -> str:
    """Render the section's loops as an SVG document.

    Loops are projected into the plane's frame; each becomes one path with
    fill-rule "evenodd", white fill and black stroke (the cut-face
    convention).  Paths are painted roots first so nested loops stay
    visible.  A comment header records the plane origin and normal.
    """
    u, v = plane.basis()
    frame = np.stack([u, v], axis=1)
    loops2 = [(lp.points - plane.origin) @ frame for lp in section.loops]

    if loops2:
        allpts = np.concatenate(loops2)
        lo = allpts.min(axis=0)
        hi = allpts.max(axis=0)
    else:
        lo = np.array([-1.0, -1.0])
        hi = np.array([1.0, 1.0])
    span = float(max(hi[0] - lo[0], hi[1] - lo[1], 1e-9))
    pad = margin * span
    scale = size / (span + 2 * pad)

    def to_px(p):
        x = (p[:, 0] - lo[0] + pad) * scale
        y = size - (p[:, 1] - lo[1] + pad) * scale  # SVG y points down
        return x, y

    order = sorted(range(section.loop_count), key=section.depth)
    paths = []
    for i in order:
        x, y = to_px(loops2[i])
        d = "M " + " L ".join(f"{xi:.3f} {yi:.3f}" for xi, yi in zip(x, y)) + " Z"
        paths.append(f'  <path d="{d}" fill="white" stroke="black" '
                     f'stroke-width="2" fill-rule="evenodd"/>')

    o = plane.origin
    n = plane.normal
    header = (f"<!-- cross-section: plane origin ({o[0]:.9g} {o[1]:.9g} {o[2]:.9g}) "
              f"normal ({n[0]:.9g} {n[1]:.9g} {n[2]:.9g}) -->")
    body = "\n".join(paths)
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
            f'viewBox="0 0 {size} {size}">\n{header}\n'
            f'  <rect width="{size}" height="{size}" fill="white"/>\n'
            f"{body}\n</svg>\n")
