"""Planar diagram of a box with its barycenter, the origin and the boundary hit."""

from __future__ import annotations

import math
from typing import Sequence

from .errors import UnsupportedDimension
from .polytope import Polytope

SCALE = 40.0
MARGIN = 1.0


def _ccw(vertices):
    cx = sum(float(v[0]) for v in vertices) / len(vertices)
    cy = sum(float(v[1]) for v in vertices) / len(vertices)
    return sorted(vertices, key=lambda v: math.atan2(float(v[1]) - cy, float(v[0]) - cx))


def emit_svg(box: Polytope, bc: Sequence, q: Sequence | None) -> bytes:
    if box.dim != 2:
        raise UnsupportedDimension(f"can only draw 2-dimensional boxes, got {box.dim}")
    xs = [float(v[0]) for v in box.vertices] + [0.0]
    ys = [float(v[1]) for v in box.vertices] + [0.0]
    x0, x1 = min(xs) - MARGIN, max(xs) + MARGIN
    y0, y1 = min(ys) - MARGIN, max(ys) + MARGIN
    width, height = (x1 - x0) * SCALE, (y1 - y0) * SCALE

    def px(p):
        return (float(p[0]) - x0) * SCALE, (y1 - float(p[1])) * SCALE

    pts = " ".join("%.4f,%.4f" % px(v) for v in _ccw(box.vertices))
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'width="%.4f" height="%.4f" viewBox="0 0 %.4f %.4f">' % (width, height, width, height),
        f'  <polygon points="{pts}" fill="none" stroke="black" stroke-width="1.5"/>',
    ]
    markers = [("bc", bc), ("O", (0, 0))]
    if q is not None:
        markers.append(("q", q))
        a, b = px(bc), px(q)
        lines.append(
            '  <line x1="%.4f" y1="%.4f" x2="%.4f" y2="%.4f" stroke="black" stroke-width="2"/>'
            % (a[0], a[1], b[0], b[1])
        )
    for label, p in markers:
        cx, cy = px(p)
        lines.append(f'  <g class="marker" id="marker-{label}">')
        lines.append('    <circle cx="%.4f" cy="%.4f" r="3" fill="black"/>' % (cx, cy))
        lines.append('    <text x="%.4f" y="%.4f" font-size="12">%s</text>' % (cx + 5, cy - 5, label))
        lines.append("  </g>")
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")
