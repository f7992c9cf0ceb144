"""Pure-numpy implementations of the hot geometry primitives.

Semantics are shared with the compiled twin in ``_core.pyx``; both operate on
float64 arrays of segments with rows ``(ax, ay, bx, by)``.  All predicates are
tolerance-based (absolute length units), never exact arithmetic.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

_EMPTY = np.empty((0, 4), dtype=np.float64)


def first_hit(px, py, qx, qy, segs, eps=1e-9):
    """Earliest intersection of the query segment p->q with a segment soup.

    Returns ``(index, t)`` with ``t`` the query parameter in ``(eps_t, 1]``,
    or ``(-1, inf)`` when nothing is hit.  Contacts anywhere on a soup
    segment, endpoints included, count as hits; parallel contact does not.
    """
    if len(segs) == 0:
        return -1, np.inf
    segs = np.asarray(segs, dtype=np.float64)
    dx, dy = qx - px, qy - py
    qlen = np.hypot(dx, dy)
    if qlen <= eps:
        return -1, np.inf
    ex = segs[:, 2] - segs[:, 0]
    ey = segs[:, 3] - segs[:, 1]
    denom = dx * ey - dy * ex
    rx = segs[:, 0] - px
    ry = segs[:, 1] - py
    with np.errstate(divide="ignore", invalid="ignore"):
        t = (rx * ey - ry * ex) / denom
        u = (rx * dy - ry * dx) / denom
    ueps = eps / np.maximum(np.hypot(ex, ey), eps)
    teps = eps / qlen
    ok = (np.abs(denom) > 1e-14) & (t > teps) & (t <= 1.0) & (u >= -ueps) & (u <= 1.0 + ueps)
    if not ok.any():
        return -1, np.inf
    t = np.where(ok, t, np.inf)
    i = int(np.argmin(t))
    return i, float(t[i])


def point_segs_dist(x, y, segs):
    """Distance from a point to the nearest segment of the soup."""
    if len(segs) == 0:
        return np.inf
    segs = np.asarray(segs, dtype=np.float64)
    ex = segs[:, 2] - segs[:, 0]
    ey = segs[:, 3] - segs[:, 1]
    lensq = ex * ex + ey * ey
    lensq = np.where(lensq < 1e-300, 1.0, lensq)
    t = ((x - segs[:, 0]) * ex + (y - segs[:, 1]) * ey) / lensq
    t = np.clip(t, 0.0, 1.0)
    cx = segs[:, 0] + t * ex
    cy = segs[:, 1] + t * ey
    return float(np.min(np.hypot(x - cx, y - cy)))


def points_segs_dist(points, segs):
    """Per-point distance to the nearest soup segment; shape (npoints,)."""
    points = np.asarray(points, dtype=np.float64)
    if len(segs) == 0:
        return np.full(len(points), np.inf)
    segs = np.asarray(segs, dtype=np.float64)
    ex = segs[:, 2] - segs[:, 0]
    ey = segs[:, 3] - segs[:, 1]
    lensq = ex * ex + ey * ey
    lensq = np.where(lensq < 1e-300, 1.0, lensq)
    rx = points[:, 0, None] - segs[None, :, 0]
    ry = points[:, 1, None] - segs[None, :, 1]
    t = np.clip((rx * ex + ry * ey) / lensq, 0.0, 1.0)
    dx = rx - t * ex
    dy = ry - t * ey
    return np.sqrt(np.min(dx * dx + dy * dy, axis=1))


def segs_intersect_any(a, b, eps=1e-9):
    """True when any segment of soup ``a`` touches any segment of soup ``b``.

    Touching means distance below ``eps``; shared endpoints count.
    """
    return segs_min_dist(a, b) <= eps


def segs_min_dist(a, b):
    """Minimum distance between two segment soups (0 when they cross)."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if len(a) == 0 or len(b) == 0:
        return np.inf
    best = np.inf
    for ax, ay, bx, by in a:
        i, _ = first_hit(ax, ay, bx, by, b, eps=0.0)
        if i >= 0:
            return 0.0
        d = min(
            point_segs_dist(ax, ay, b),
            point_segs_dist(bx, by, b),
            float(np.min(points_segs_dist(b[:, :2], [[ax, ay, bx, by]]))),
            float(np.min(points_segs_dist(b[:, 2:], [[ax, ay, bx, by]]))),
        )
        best = min(best, d)
    return best


def directed_hausdorff(points, segs):
    """sup over sample points of the distance to the segment soup."""
    d = points_segs_dist(points, segs)
    return float(np.max(d)) if len(d) else 0.0


def point_in_polygon(x, y, verts):
    """Crossing-number test; returns 1 inside, 0 outside (boundary unspecified)."""
    verts = np.asarray(verts, dtype=np.float64)
    x1, y1 = verts[:, 0], verts[:, 1]
    x2, y2 = np.roll(x1, -1), np.roll(y1, -1)
    cond = (y1 > y) != (y2 > y)
    with np.errstate(divide="ignore", invalid="ignore"):
        xs = x1 + (y - y1) / (y2 - y1) * (x2 - x1)
    crossings = np.count_nonzero(cond & (x < np.where(cond, xs, np.inf)))
    return int(crossings % 2)
