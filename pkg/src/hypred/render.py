"""SVG rendering of polygons in the Poincare disk.

Geodesic edges are drawn as sampled polylines (default 64 samples per edge)
rather than exact circular arcs; at disk scale the difference is invisible
and the output stays model-agnostic.  Output is a deterministic function of
the input, so renders are golden-file testable.
"""

from .document import PolygonDocument, vertices_as_hpoints
from .geometry import (distance, exp_map, foot_of_perpendicular,
                       tangent_toward, to_poincare)
from .reduced import opposite_side_line

VIEW_BOX = "-1.05 -1.05 2.1 2.1"


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _geodesic_polyline(a, b, samples):
    """Disk-coordinate sample points of the segment [a, b], endpoints included."""
    d = distance(a, b)
    u = tangent_toward(a, b)
    pts = []
    for k in range(samples + 1):
        p = exp_map(a, (d * k / samples) * u) if k else a
        z = to_poincare(p)
        pts.append(f"{_fmt(z[0])},{_fmt(z[1])}")
    return " ".join(pts)


def render_svg(doc: PolygonDocument, samples_per_edge=64,
               show_butterflies=False) -> str:
    """SVG text: unit circle, polygon edges, optional vertex-to-foot chords."""
    verts = vertices_as_hpoints(doc)
    n = len(verts)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{VIEW_BOX}" width="512" height="512">',
        '<circle cx="0" cy="0" r="1" fill="none" stroke="#999" stroke-width="0.004"/>',
    ]
    for i in range(n):
        pts = _geodesic_polyline(verts[i], verts[(i + 1) % n], samples_per_edge)
        lines.append(f'<polyline fill="none" stroke="#1f4e89" '
                     f'stroke-width="0.006" points="{pts}"/>')

    if show_butterflies:
        from .polygon import ConvexPolygon

        poly = ConvexPolygon(verts)
        for i in range(n):
            foot = foot_of_perpendicular(verts[i], opposite_side_line(poly, i))
            pts = _geodesic_polyline(verts[i], foot, samples_per_edge)
            lines.append(f'<polyline fill="none" stroke="#c84b31" '
                         f'stroke-width="0.003" points="{pts}"/>')

    lines.append("</svg>")
    return "\n".join(lines) + "\n"
