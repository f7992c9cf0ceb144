"""Planar primitives: lines under the isometry-invariant measure, polygonal
contours, sampling windows, and the metric helpers used everywhere else.

Conventions
-----------
A line is the pair ``(phi, rho)`` with ``phi`` in ``[0, pi)`` and signed
distance ``rho``; the point ``(rho*sin(phi), rho*cos(phi))`` is the foot of
the perpendicular from the origin and ``(cos(phi), -sin(phi))`` the direction.
With Lebesgue measure on ``(phi, rho)`` the mass of lines meeting a convex
body equals its perimeter (``2*pi*r`` for a disk of radius ``r``).

All coincidence predicates use the absolute tolerance ``EPS_GEOM``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

from . import _kernels as K

EPS_GEOM = 1e-9


class GeometryError(ValueError):
    """Invalid or degenerate geometric input."""


class NearParallelLines(GeometryError):
    """Raised instead of silently intersecting nearly parallel lines."""


class Line(NamedTuple):
    """Undirected straight line, angle/offset parameterization."""

    phi: float
    rho: float

    def normal(self):
        return math.sin(self.phi), math.cos(self.phi)

    def direction(self):
        return math.cos(self.phi), -math.sin(self.phi)

    def foot(self):
        nx, ny = self.normal()
        return self.rho * nx, self.rho * ny

    def point_at(self, t: float):
        fx, fy = self.foot()
        dx, dy = self.direction()
        return fx + t * dx, fy + t * dy

    def offset_of(self, point) -> float:
        """Signed parameter of the orthogonal projection of ``point``."""
        dx, dy = self.direction()
        return point[0] * dx + point[1] * dy

    def signed_dist(self, point) -> float:
        nx, ny = self.normal()
        return point[0] * nx + point[1] * ny - self.rho

    @staticmethod
    def from_points(p, q) -> "Line":
        ux, uy = q[0] - p[0], q[1] - p[1]
        norm = math.hypot(ux, uy)
        if norm <= EPS_GEOM:
            raise GeometryError("coincident points do not define a line")
        phi = math.atan2(-uy, ux) % math.pi
        nx, ny = math.sin(phi), math.cos(phi)
        return Line(phi, p[0] * nx + p[1] * ny)

    @staticmethod
    def through(point, phi: float) -> "Line":
        phi = phi % math.pi
        return Line(phi, point[0] * math.sin(phi) + point[1] * math.cos(phi))


def line_intersection(a: Line, b: Line, eps: float = EPS_GEOM):
    """Intersection point of two lines; near-parallel pairs are refused."""
    s = math.sin(a.phi - b.phi)
    if abs(s) < eps:
        raise NearParallelLines(f"|sin(phi1-phi2)|={abs(s):.3e} below tolerance")
    na, nb = a.normal(), b.normal()
    det = na[0] * nb[1] - na[1] * nb[0]
    x = (a.rho * nb[1] - b.rho * na[1]) / det
    y = (na[0] * b.rho - nb[0] * a.rho) / det
    return x, y


# ---------------------------------------------------------------------------
# polygon helpers (plain arrays; vertices in order, closing edge implicit)


def polygon_signed_area(verts) -> float:
    v = np.asarray(verts, dtype=np.float64)
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def polygon_perimeter(verts) -> float:
    v = np.asarray(verts, dtype=np.float64)
    return float(np.sum(np.hypot(*(np.roll(v, -1, axis=0) - v).T)))


def polyline_length(pts) -> float:
    p = np.asarray(pts, dtype=np.float64)
    if len(p) < 2:
        return 0.0
    return float(np.sum(np.hypot(*(p[1:] - p[:-1]).T)))


def closed_segments(verts) -> np.ndarray:
    v = np.asarray(verts, dtype=np.float64)
    return np.hstack([v, np.roll(v, -1, axis=0)])


def open_segments(pts) -> np.ndarray:
    p = np.asarray(pts, dtype=np.float64)
    if len(p) < 2:
        return np.empty((0, 4))
    return np.hstack([p[:-1], p[1:]])


def densify(verts, max_edge: float, closed: bool = True) -> np.ndarray:
    """Insert points so no sampled gap exceeds ``max_edge``; keeps vertices."""
    v = np.asarray(verts, dtype=np.float64)
    loop = np.vstack([v, v[:1]]) if closed else v
    out = []
    for a, b in zip(loop[:-1], loop[1:]):
        n = max(1, int(math.ceil(math.hypot(*(b - a)) / max_edge)))
        ts = np.arange(n) / n
        out.append(a + ts[:, None] * (b - a))
    out.append(loop[-1:])
    return np.vstack(out)


class Contour:
    """Closed polygon given by its vertex ring (no repeated closing vertex).

    Cheap sanity checks run at construction; the full admissibility predicate
    (simplicity, co-linearity) lives in :func:`is_admissible`.
    """

    __slots__ = ("verts", "_segs")

    def __init__(self, verts):
        v = np.asarray(verts, dtype=np.float64)
        if v.ndim != 2 or v.shape[1] != 2 or len(v) < 3:
            raise GeometryError("contour needs at least 3 planar vertices")
        if not np.all(np.isfinite(v)):
            raise GeometryError("non-finite contour vertex")
        edge = np.hypot(*(np.roll(v, -1, axis=0) - v).T)
        if np.any(edge <= EPS_GEOM):
            raise GeometryError("zero-length contour edge")
        if abs(polygon_signed_area(v)) <= EPS_GEOM**2:
            raise GeometryError("contour encloses no area")
        self.verts = v
        self._segs = None

    def __len__(self):
        return len(self.verts)

    def __eq__(self, other):
        return isinstance(other, Contour) and np.array_equal(self.verts, other.verts)

    def segments(self) -> np.ndarray:
        if self._segs is None:
            self._segs = closed_segments(self.verts)
        return self._segs

    @property
    def length(self) -> float:
        return polygon_perimeter(self.verts)

    @property
    def area(self) -> float:
        return abs(polygon_signed_area(self.verts))

    @property
    def diameter(self) -> float:
        v = self.verts
        d2 = np.sum((v[:, None, :] - v[None, :, :]) ** 2, axis=-1)
        return float(math.sqrt(np.max(d2)))

    def centroid(self):
        return tuple(np.mean(self.verts, axis=0))

    def contains_point(self, p) -> bool:
        return bool(K.point_in_polygon(p[0], p[1], self.verts))

    def translated(self, dx, dy) -> "Contour":
        return Contour(self.verts + np.array([dx, dy]))

    def min_dist_to_point(self, p) -> float:
        return K.point_segs_dist(p[0], p[1], self.segments())

    def is_simple(self, eps: float = EPS_GEOM) -> bool:
        """No self-intersection and no adjacent co-linear edge pair."""
        v = self.verts
        n = len(v)
        nxt = np.roll(v, -1, axis=0)
        dirs = nxt - v
        lens = np.hypot(dirs[:, 0], dirs[:, 1])
        u = dirs / lens[:, None]
        cross = np.abs(u[:, 0] * np.roll(u[:, 1], -1) - u[:, 1] * np.roll(u[:, 0], -1))
        if np.any(cross < eps):
            return False
        segs = self.segments()
        for i in range(n):
            others = [j for j in range(n) if j not in (i, (i - 1) % n, (i + 1) % n)]
            if not others:
                continue
            hit, _ = K.first_hit(v[i, 0], v[i, 1], nxt[i, 0], nxt[i, 1], segs[others], eps)
            if hit >= 0:
                return False
            if K.point_segs_dist(v[i, 0], v[i, 1], segs[others]) <= eps:
                return False
        return True


class PolygonalConfiguration:
    """Finite collection of contours, plus open arcs in free-boundary output."""

    __slots__ = ("contours", "arcs")

    def __init__(self, contours: Sequence[Contour] = (), arcs: Sequence[np.ndarray] = ()):
        self.contours = tuple(contours)
        self.arcs = tuple(np.asarray(a, dtype=np.float64) for a in arcs)

    def __len__(self):
        return len(self.contours) + len(self.arcs)

    @property
    def total_length(self) -> float:
        return sum(c.length for c in self.contours) + sum(polyline_length(a) for a in self.arcs)

    def all_segments(self) -> np.ndarray:
        parts = [c.segments() for c in self.contours]
        parts += [open_segments(a) for a in self.arcs]
        if not parts:
            return np.empty((0, 4))
        return np.vstack(parts)

    @staticmethod
    def empty() -> "PolygonalConfiguration":
        return PolygonalConfiguration()


@dataclass(frozen=True)
class Window:
    """Bounded sampling window: a disk or a convex polygon."""

    kind: str
    center: tuple = (0.0, 0.0)
    radius: float = 0.0
    vertices: Optional[np.ndarray] = None

    @staticmethod
    def disk(radius: float, center=(0.0, 0.0)) -> "Window":
        if radius <= 0:
            raise GeometryError("window disk needs strictly positive radius")
        return Window("disk", (float(center[0]), float(center[1])), float(radius))

    @staticmethod
    def convex_polygon(vertices) -> "Window":
        v = np.asarray(vertices, dtype=np.float64)
        if len(v) < 3:
            raise GeometryError("window polygon needs >= 3 vertices")
        if polygon_signed_area(v) < 0:
            v = v[::-1].copy()
        area = polygon_signed_area(v)
        if area <= EPS_GEOM**2:
            raise GeometryError("window polygon encloses no area")
        e = np.roll(v, -1, axis=0) - v
        cross = e[:, 0] * np.roll(e[:, 1], -1) - e[:, 1] * np.roll(e[:, 0], -1)
        if np.any(cross <= 0):
            raise GeometryError("window polygon must be strictly convex")
        cx, cy = np.mean(v, axis=0)
        return Window("polygon", (float(cx), float(cy)), 0.0, v)

    @staticmethod
    def square(side: float, center=(0.0, 0.0)) -> "Window":
        h = side / 2.0
        cx, cy = center
        return Window.convex_polygon(
            [(cx - h, cy - h), (cx + h, cy - h), (cx + h, cy + h), (cx - h, cy + h)]
        )

    def area(self) -> float:
        if self.kind == "disk":
            return math.pi * self.radius**2
        return polygon_signed_area(self.vertices)

    def perimeter(self) -> float:
        if self.kind == "disk":
            return 2.0 * math.pi * self.radius
        return polygon_perimeter(self.vertices)

    def bounding(self):
        """Center and radius of a disk covering the window."""
        if self.kind == "disk":
            return self.center, self.radius
        d = np.hypot(self.vertices[:, 0] - self.center[0], self.vertices[:, 1] - self.center[1])
        return self.center, float(np.max(d))

    def boundary_signed_dist(self, p) -> float:
        """Distance to the boundary, positive inside the window."""
        if self.kind == "disk":
            return self.radius - math.hypot(p[0] - self.center[0], p[1] - self.center[1])
        v = self.vertices
        e = np.roll(v, -1, axis=0) - v
        elen = np.hypot(e[:, 0], e[:, 1])
        inward = (e[:, 0] * (p[1] - v[:, 1]) - e[:, 1] * (p[0] - v[:, 0])) / elen
        return float(np.min(inward))

    def contains(self, p, clearance: float = 0.0) -> bool:
        return self.boundary_signed_dist(p) >= clearance

    def boundary_segments(self) -> np.ndarray:
        if self.kind == "disk":
            pts = densify(
                self.center + self.radius * np.column_stack(
                    [np.cos(np.linspace(0, 2 * math.pi, 257)[:-1]),
                     np.sin(np.linspace(0, 2 * math.pi, 257)[:-1])]
                ),
                max_edge=self.radius,
                closed=True,
            )
            return open_segments(pts)
        return closed_segments(self.vertices)

    def chord(self, line: Line):
        """Intersection of the line with the window, as a parameter interval.

        Returns ``(t0, t1)`` along ``line.point_at`` or ``None`` when the line
        misses the window.
        """
        if self.kind == "disk":
            d = line.signed_dist(self.center)
            if abs(d) >= self.radius:
                return None
            t_mid = line.offset_of(self.center)
            half = math.sqrt(self.radius**2 - d * d)
            return t_mid - half, t_mid + half
        dx, dy = line.direction()
        fx, fy = line.foot()
        lo, hi = -math.inf, math.inf
        v = self.vertices
        e = np.roll(v, -1, axis=0) - v
        for (vx, vy), (ex, ey) in zip(v, e):
            # inside of edge: cross(e, p - v) >= 0
            denom = ex * dy - ey * dx
            num = ex * (fy - vy) - ey * (fx - vx)
            if abs(denom) < 1e-14:
                if num < 0:
                    return None
                continue
            t = -num / denom
            if denom > 0:
                lo = max(lo, t)
            else:
                hi = min(hi, t)
        if lo >= hi:
            return None
        return lo, hi

    def sample_point(self, rng) -> tuple:
        """Uniform point of the window interior."""
        if self.kind == "disk":
            r = self.radius * math.sqrt(rng.uniform())
            a = rng.uniform(0.0, 2.0 * math.pi)
            return self.center[0] + r * math.cos(a), self.center[1] + r * math.sin(a)
        lo = np.min(self.vertices, axis=0)
        hi = np.max(self.vertices, axis=0)
        while True:
            p = (rng.uniform(lo[0], hi[0]), rng.uniform(lo[1], hi[1]))
            if self.contains(p):
                return p

    def grown(self, margin: float) -> "Window":
        if self.kind == "disk":
            return Window.disk(self.radius + margin, self.center)
        c = np.asarray(self.center)
        v = self.vertices
        d = np.hypot(v[:, 0] - c[0], v[:, 1] - c[1])[:, None]
        return Window.convex_polygon(c + (v - c) * (1.0 + margin / d))

    def to_dict(self) -> dict:
        if self.kind == "disk":
            return {"kind": "disk", "center": list(self.center), "radius": self.radius}
        return {"kind": "polygon", "vertices": self.vertices.tolist()}

    @staticmethod
    def from_dict(d: dict) -> "Window":
        if d["kind"] == "disk":
            return Window.disk(d["radius"], tuple(d["center"]))
        return Window.convex_polygon(d["vertices"])


# ---------------------------------------------------------------------------
# line measure and Poisson line process


def measure_lines_hitting(region: Window) -> float:
    """Mass of the line measure on lines meeting a convex region.

    By the Cauchy formula this is the perimeter; for a disk of radius ``r``
    it equals ``2*pi*r``.
    """
    if region.area() <= 0:
        raise GeometryError("degenerate region")
    return region.perimeter()


def sample_poisson_lines(window: Window, rng) -> list:
    """One draw of the Poisson line process restricted to window hitters.

    The count is Poisson with mean :func:`measure_lines_hitting`; lines are
    produced by restriction (rejection) from the bounding disk, so every
    returned line intersects the window.
    """
    (cx, cy), rad = window.bounding()
    n = rng.poisson(2.0 * math.pi * rad)
    if n == 0:
        return []
    phi = rng.uniform(0.0, math.pi, size=n)
    s = rng.uniform(-rad, rad, size=n)
    rho = cx * np.sin(phi) + cy * np.cos(phi) + s
    lines = [Line(float(p), float(r)) for p, r in zip(phi, rho)]
    if window.kind == "disk" and window.radius == rad:
        return lines
    return [ln for ln in lines if window.chord(ln) is not None]


# ---------------------------------------------------------------------------
# admissibility


def _colinear_pair(sa, sb, eps: float) -> bool:
    """True when two segments lie on one straight line (within eps)."""
    ax, ay, bx, by = sa
    ux, uy = bx - ax, by - ay
    un = math.hypot(ux, uy)
    cx, cy, dx, dy = sb
    vx, vy = dx - cx, dy - cy
    vn = math.hypot(vx, vy)
    if abs(ux * vy - uy * vx) / (un * vn) > eps:
        return False
    # parallel: same supporting line iff endpoint offsets vanish
    return abs(ux * (cy - ay) - uy * (cx - ax)) / un <= eps


def is_admissible(
    config: PolygonalConfiguration,
    window: Window,
    free_boundary: bool = False,
    eps: float = EPS_GEOM,
) -> bool:
    """Check the admissibility rules for a configuration in a window.

    Closed mode: every contour strictly inside the window, all vertices of
    degree 2, simple and mutually disjoint contours, and no two edges of
    distinct components co-linear.  Free-boundary mode additionally accepts
    open arcs whose two endpoints lie on the window boundary (degree 1).
    """
    if not free_boundary and config.arcs:
        return False
    for c in config.contours:
        if not c.is_simple(eps):
            return False
        for p in c.verts:
            if window.boundary_signed_dist(p) <= eps:
                return False
        if c.length <= eps or c.area <= eps * eps or c.diameter <= eps:
            return False
    for a in config.arcs:
        if len(a) < 2 or polyline_length(a) <= eps:
            return False
        for p in a[1:-1]:
            if window.boundary_signed_dist(p) <= eps:
                return False
        for p in (a[0], a[-1]):
            if abs(window.boundary_signed_dist(p)) > 1e-6:
                return False
        segs = open_segments(a)
        for i in range(len(segs)):
            others = [j for j in range(len(segs)) if abs(j - i) > 1]
            if others and K.segs_min_dist(segs[i : i + 1], segs[others]) <= eps:
                return False
        d = segs[:, 2:] - segs[:, :2]
        u = d / np.hypot(d[:, 0], d[:, 1])[:, None]
        if len(u) > 1:
            cr = np.abs(u[:-1, 0] * u[1:, 1] - u[:-1, 1] * u[1:, 0])
            if np.any(cr < eps):
                return False
    components = [c.segments() for c in config.contours] + [
        open_segments(a) for a in config.arcs if len(a) > 1
    ]
    for i in range(len(components)):
        for j in range(i + 1, len(components)):
            if K.segs_min_dist(components[i], components[j]) <= eps:
                return False
            for sa in components[i]:
                for sb in components[j]:
                    if _colinear_pair(sa, sb, eps):
                        return False
    return True


# ---------------------------------------------------------------------------
# metrics


def _as_dense_points_and_segs(obj, max_edge):
    if isinstance(obj, Contour):
        return densify(obj.verts, max_edge, closed=True), obj.segments()
    a = np.asarray(obj, dtype=np.float64)
    if a.ndim != 2 or len(a) == 0:
        raise GeometryError("empty point set")
    if len(a) == 1:
        return a, np.hstack([a, a])
    return densify(a, max_edge, closed=False), open_segments(a)


def _extent(obj) -> float:
    v = obj.verts if isinstance(obj, Contour) else np.asarray(obj, dtype=np.float64)
    span = np.max(v, axis=0) - np.min(v, axis=0)
    return float(max(np.max(span), EPS_GEOM))


def hausdorff_distance(a, b, max_edge: Optional[float] = None) -> float:
    """Symmetric Hausdorff distance between two polygons or polylines.

    Computed on densified point samples against exact segment distances; the
    default subdivision is ``extent/512``.
    """
    if max_edge is None:
        max_edge = max(_extent(a), _extent(b)) / 512.0
    pa, sa = _as_dense_points_and_segs(a, max_edge)
    pb, sb = _as_dense_points_and_segs(b, max_edge)
    return max(K.directed_hausdorff(pa, sb), K.directed_hausdorff(pb, sa))


def circle_hausdorff(contour: Contour, center, radius: float, n_circle: int = 256) -> float:
    """Hausdorff distance between a contour and a circle (exact contour side)."""
    pts = densify(contour.verts, max(contour.diameter, radius) / 512.0, closed=True)
    d = np.hypot(pts[:, 0] - center[0], pts[:, 1] - center[1])
    to_circle = float(np.max(np.abs(d - radius)))
    ang = np.linspace(0.0, 2.0 * math.pi, n_circle, endpoint=False)
    cpts = np.column_stack(
        [center[0] + radius * np.cos(ang), center[1] + radius * np.sin(ang)]
    )
    from_circle = K.directed_hausdorff(cpts, contour.segments())
    return max(to_circle, from_circle)


def best_circle_fit(contour: Contour, radius: float):
    """Center minimizing the Hausdorff distance to a circle of given radius.

    Local descent (Nelder-Mead) from the vertex centroid, with a coarse grid
    fallback; returns ``(center, distance)``.
    """
    if radius <= 0:
        raise GeometryError("radius must be positive")
    from scipy.optimize import minimize

    def objective(c):
        return circle_hausdorff(contour, c, radius)

    starts = [np.asarray(contour.centroid())]
    lo = np.min(contour.verts, axis=0)
    hi = np.max(contour.verts, axis=0)
    gx = np.linspace(lo[0], hi[0], 5)
    gy = np.linspace(lo[1], hi[1], 5)
    grid = [np.array([x, y]) for x in gx for y in gy]
    grid.sort(key=objective)
    starts.append(grid[0])
    best_c, best_d = None, math.inf
    for s in starts:
        res = minimize(objective, s, method="Nelder-Mead", options={"xatol": 1e-6, "fatol": 1e-9})
        if res.fun < best_d:
            best_d = float(res.fun)
            best_c = (float(res.x[0]), float(res.x[1]))
    return best_c, best_d


# ---------------------------------------------------------------------------
# areas of clipped regions


def circle_polygon_area(verts, center, r: float) -> float:
    """Area of the intersection of a simple polygon with a disk.

    Green's theorem over the polygon boundary: pieces of edges inside the
    disk contribute triangle terms, pieces outside contribute arc sectors.
    """
    v = np.asarray(verts, dtype=np.float64) - np.asarray(center, dtype=np.float64)
    sign = 1.0
    if polygon_signed_area(v) < 0:
        v = v[::-1]
    total = 0.0
    n = len(v)
    for i in range(n):
        a = v[i]
        b = v[(i + 1) % n]
        total += _disk_triangle_term(a, b, r)
    return abs(total) * sign


def _disk_triangle_term(a, b, r: float) -> float:
    """Signed area of triangle (O, a, b) intersected with the disk |x|<=r."""
    cross = 0.5 * (a[0] * b[1] - a[1] * b[0])
    ra, rb = math.hypot(*a), math.hypot(*b)
    if ra <= r and rb <= r:
        return cross
    d = b - a
    dd = float(d @ d)
    if dd < 1e-300:
        return 0.0
    # clip edge to the disk: |a + t d|^2 = r^2
    pa = float(a @ d)
    c0 = float(a @ a) - r * r
    disc = pa * pa - dd * c0
    ts = []
    if disc > 0:
        s = math.sqrt(disc)
        ts = [t for t in ((-pa - s) / dd, (-pa + s) / dd) if 0.0 < t < 1.0]
    pieces = [0.0] + ts + [1.0]
    total = 0.0
    for t0, t1 in zip(pieces[:-1], pieces[1:]):
        m = a + 0.5 * (t0 + t1) * d
        p0 = a + t0 * d
        p1 = a + t1 * d
        if math.hypot(*m) <= r:
            total += 0.5 * (p0[0] * p1[1] - p0[1] * p1[0])
        else:
            a0 = math.atan2(p0[1], p0[0])
            a1 = math.atan2(p1[1], p1[0])
            da = a1 - a0
            while da > math.pi:
                da -= 2.0 * math.pi
            while da < -math.pi:
                da += 2.0 * math.pi
            total += 0.5 * r * r * da
    return total


def convex_clip(subject, clip_verts) -> np.ndarray:
    """Sutherland-Hodgman clip of a polygon against a convex CCW polygon."""
    out = list(np.asarray(subject, dtype=np.float64))
    cv = np.asarray(clip_verts, dtype=np.float64)
    n = len(cv)
    for i in range(n):
        if not out:
            break
        a = cv[i]
        b = cv[(i + 1) % n]
        ex, ey = b - a
        inp = out
        out = []
        prev = inp[-1]
        prev_in = ex * (prev[1] - a[1]) - ey * (prev[0] - a[0]) >= 0
        for cur in inp:
            cur_in = ex * (cur[1] - a[1]) - ey * (cur[0] - a[0]) >= 0
            if cur_in != prev_in:
                dx, dy = cur - prev
                denom = ex * dy - ey * dx
                if abs(denom) > 1e-14:
                    t = (ex * (a[1] - prev[1]) - ey * (a[0] - prev[0])) / denom
                    out.append(prev + t * np.array([dx, dy]))
            if cur_in:
                out.append(cur)
            prev, prev_in = cur, cur_in
    return np.asarray(out, dtype=np.float64) if out else np.empty((0, 2))


def region_polygon_area(verts, region: Window) -> float:
    """Area of polygon carved by a window region (disk or convex polygon)."""
    if region.kind == "disk":
        return circle_polygon_area(verts, region.center, region.radius)
    clipped = convex_clip(verts, region.vertices)
    if len(clipped) < 3:
        return 0.0
    return abs(polygon_signed_area(clipped))


def regular_polygon(center, radius: float, n: int, phase: float = 0.0) -> Contour:
    ang = phase + 2.0 * math.pi * np.arange(n) / n
    return Contour(
        np.column_stack([center[0] + radius * np.cos(ang), center[1] + radius * np.sin(ang)])
    )
