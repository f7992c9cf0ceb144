# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled twin of ``_fallback``; see that module for the contract."""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY, fabs, fmax, fmin, hypot, sqrt

BACKEND = "compiled"


def first_hit(double px, double py, double qx, double qy, segs, double eps=1e-9):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] s = np.ascontiguousarray(segs, dtype=np.float64)
    cdef Py_ssize_t n = s.shape[0]
    if n == 0:
        return -1, INFINITY
    cdef double dx = qx - px
    cdef double dy = qy - py
    cdef double qlen = hypot(dx, dy)
    if qlen <= eps:
        return -1, INFINITY
    cdef double teps = eps / qlen
    cdef double best_t = INFINITY
    cdef Py_ssize_t best_i = -1, i
    cdef double ex, ey, denom, rx, ry, t, u, elen, ueps
    for i in range(n):
        ex = s[i, 2] - s[i, 0]
        ey = s[i, 3] - s[i, 1]
        denom = dx * ey - dy * ex
        if fabs(denom) <= 1e-14:
            continue
        rx = s[i, 0] - px
        ry = s[i, 1] - py
        t = (rx * ey - ry * ex) / denom
        if t <= teps or t > 1.0 or t >= best_t:
            continue
        u = (rx * dy - ry * dx) / denom
        elen = hypot(ex, ey)
        ueps = eps / (elen if elen > eps else eps)
        if u < -ueps or u > 1.0 + ueps:
            continue
        best_t = t
        best_i = i
    return best_i, best_t


cdef double _pt_seg(double x, double y, double ax, double ay, double bx, double by) nogil:
    cdef double ex = bx - ax
    cdef double ey = by - ay
    cdef double lensq = ex * ex + ey * ey
    cdef double t
    if lensq < 1e-300:
        return hypot(x - ax, y - ay)
    t = ((x - ax) * ex + (y - ay) * ey) / lensq
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    return hypot(x - ax - t * ex, y - ay - t * ey)


def point_segs_dist(double x, double y, segs):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] s = np.ascontiguousarray(segs, dtype=np.float64)
    cdef Py_ssize_t n = s.shape[0]
    if n == 0:
        return INFINITY
    cdef double best = INFINITY
    cdef double d
    cdef Py_ssize_t i
    for i in range(n):
        d = _pt_seg(x, y, s[i, 0], s[i, 1], s[i, 2], s[i, 3])
        if d < best:
            best = d
    return best


def points_segs_dist(points, segs):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] p = np.ascontiguousarray(points, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] s = np.ascontiguousarray(segs, dtype=np.float64)
    cdef Py_ssize_t m = p.shape[0]
    cdef Py_ssize_t n = s.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.full(m, INFINITY)
    cdef Py_ssize_t i, j
    cdef double best, d
    for i in range(m):
        best = INFINITY
        for j in range(n):
            d = _pt_seg(p[i, 0], p[i, 1], s[j, 0], s[j, 1], s[j, 2], s[j, 3])
            if d < best:
                best = d
        out[i] = best
    return out


cdef bint _cross(double ax, double ay, double bx, double by,
                 double cx, double cy, double dx, double dy) nogil:
    cdef double d1x = bx - ax
    cdef double d1y = by - ay
    cdef double d2x = dx - cx
    cdef double d2y = dy - cy
    cdef double denom = d1x * d2y - d1y * d2x
    if fabs(denom) <= 1e-14:
        return 0
    cdef double rx = cx - ax
    cdef double ry = cy - ay
    cdef double t = (rx * d2y - ry * d2x) / denom
    cdef double u = (rx * d1y - ry * d1x) / denom
    return 0.0 <= t <= 1.0 and 0.0 <= u <= 1.0


def segs_min_dist(a, b):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] sa = np.ascontiguousarray(a, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] sb = np.ascontiguousarray(b, dtype=np.float64)
    cdef Py_ssize_t n = sa.shape[0]
    cdef Py_ssize_t m = sb.shape[0]
    if n == 0 or m == 0:
        return INFINITY
    cdef double best = INFINITY
    cdef double d
    cdef Py_ssize_t i, j
    for i in range(n):
        for j in range(m):
            if _cross(sa[i, 0], sa[i, 1], sa[i, 2], sa[i, 3],
                      sb[j, 0], sb[j, 1], sb[j, 2], sb[j, 3]):
                return 0.0
            d = _pt_seg(sa[i, 0], sa[i, 1], sb[j, 0], sb[j, 1], sb[j, 2], sb[j, 3])
            d = fmin(d, _pt_seg(sa[i, 2], sa[i, 3], sb[j, 0], sb[j, 1], sb[j, 2], sb[j, 3]))
            d = fmin(d, _pt_seg(sb[j, 0], sb[j, 1], sa[i, 0], sa[i, 1], sa[i, 2], sa[i, 3]))
            d = fmin(d, _pt_seg(sb[j, 2], sb[j, 3], sa[i, 0], sa[i, 1], sa[i, 2], sa[i, 3]))
            if d < best:
                best = d
    return best


def segs_intersect_any(a, b, double eps=1e-9):
    return segs_min_dist(a, b) <= eps


def directed_hausdorff(points, segs):
    d = points_segs_dist(points, segs)
    return float(np.max(d)) if len(d) else 0.0


def point_in_polygon(double x, double y, verts):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] v = np.ascontiguousarray(verts, dtype=np.float64)
    cdef Py_ssize_t n = v.shape[0]
    cdef Py_ssize_t i, j
    cdef int inside = 0
    cdef double x1, y1, x2, y2, xs
    j = n - 1
    for i in range(n):
        x1 = v[i, 0]
        y1 = v[i, 1]
        x2 = v[j, 0]
        y2 = v[j, 1]
        if (y1 > y) != (y2 > y):
            xs = x1 + (y - y1) / (y2 - y1) * (x2 - x1)
            if x < xs:
                inside = not inside
        j = i
    return inside
