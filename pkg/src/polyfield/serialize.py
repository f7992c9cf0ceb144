"""Snapshot serialization: JSON vertex lists and deterministic SVG."""

from __future__ import annotations

import json
import math

import numpy as np

from .geometry import Contour, PolygonalConfiguration, Window

COORD_FMT = "%.6f"


def config_to_dict(config: PolygonalConfiguration) -> dict:
    return {
        "contours": [c.verts.tolist() for c in config.contours],
        "arcs": [a.tolist() for a in config.arcs],
    }


def config_from_dict(d: dict) -> PolygonalConfiguration:
    return PolygonalConfiguration(
        [Contour(v) for v in d.get("contours", [])],
        [np.asarray(a) for a in d.get("arcs", [])],
    )


def dump_jsonl_record(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


def nesting_depths(config: PolygonalConfiguration) -> list:
    """Containment depth of each contour (0 = outermost)."""
    depths = []
    for i, c in enumerate(config.contours):
        p = c.verts[0]
        d = sum(
            1
            for j, other in enumerate(config.contours)
            if j != i and other.contains_point(p)
        )
        depths.append(d)
    return depths


def render_svg(config: PolygonalConfiguration, window: Window, scale: float = 24.0) -> str:
    """Deterministic SVG: window outline plus contours filled by parity.

    Black regions (odd nesting depth unfilled back to white via even-odd
    fill rule) render with a single path per contour.
    """
    (cx, cy), rad = window.bounding()
    pad = 0.05 * rad
    size = 2 * (rad + pad) * scale

    def sx(x):
        return (x - cx + rad + pad) * scale

    def sy(y):
        return (cy - y + rad + pad) * scale

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size:.1f}" height="{size:.1f}" '
        f'viewBox="0 0 {size:.1f} {size:.1f}">',
        f'<rect width="{size:.1f}" height="{size:.1f}" fill="white"/>',
    ]
    if window.kind == "disk":
        lines.append(
            '<circle cx="%s" cy="%s" r="%s" fill="none" stroke="#888"/>'
            % (COORD_FMT % sx(cx), COORD_FMT % sy(cy), COORD_FMT % (rad * scale))
        )
    else:
        pts = " ".join(
            (COORD_FMT % sx(x)) + "," + (COORD_FMT % sy(y)) for x, y in window.vertices
        )
        lines.append(f'<polygon points="{pts}" fill="none" stroke="#888"/>')
    depths = nesting_depths(config)
    order = sorted(range(len(config.contours)), key=lambda i: depths[i])
    for i in order:
        c = config.contours[i]
        path = "M " + " L ".join(
            (COORD_FMT % sx(x)) + " " + (COORD_FMT % sy(y)) for x, y in c.verts
        ) + " Z"
        fill = "black" if depths[i] % 2 == 0 else "white"
        lines.append(f'<path d="{path}" fill="{fill}" stroke="black" stroke-width="0.8"/>')
    for a in config.arcs:
        path = "M " + " L ".join(
            (COORD_FMT % sx(x)) + " " + (COORD_FMT % sy(y)) for x, y in a
        )
        lines.append(f'<path d="{path}" fill="none" stroke="black" stroke-width="0.8"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def wall_angle(p, center) -> float:
    return math.atan2(p[1] - center[1], p[0] - center[0])
