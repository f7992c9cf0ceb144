"""Coarse-graining skeletons of large contours.

A skeleton is a list of lattice segment endpoints ``(I_i, E_i)`` summarizing
a collection of large contours: each segment shadows a contour subpath of
Euclidean reach ``alpha``, consecutive starts stay close (so total skeleton
length tracks total interface length), subpaths keep ``delta`` apart, and
every contour point is covered.  The extractor follows a greedy
first-crossing construction; ``verify_skeleton`` is an independent
densified-sampling checker for the five defining conditions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import _kernels as K
from .geometry import Contour, densify, open_segments
from .observables import black_area

SQRT2 = math.sqrt(2.0)


@dataclass
class Skeleton:
    """Lattice segments plus (for reports) the contour subpaths they shadow."""

    segments: List[Tuple[Tuple[int, int], Tuple[int, int]]]
    subpaths: List[np.ndarray] = field(default_factory=list)
    alpha: float = 0.0
    delta: float = 0.0

    def __len__(self):
        return len(self.segments)

    @property
    def length(self) -> float:
        return sum(math.hypot(e[0] - i[0], e[1] - i[1]) for i, e in self.segments)

    def vertices(self) -> list:
        out = []
        for i, e in self.segments:
            out.extend([i, e])
        return out


class SkeletonError(ValueError):
    pass


def _contour_walk_points(c: Contour, step: float) -> np.ndarray:
    """Clockwise dense traversal points of the contour."""
    verts = c.verts
    if np.cross(verts[1] - verts[0], verts[2] - verts[1]) > 0:
        verts = verts[::-1]
    return densify(verts, step, closed=True)[:-1]


def _first_at_distance(points: np.ndarray, start_idx: int, origin, alpha: float):
    """First traversal point at Euclidean distance alpha from origin.

    Walks forward from ``start_idx`` (cyclically) and refines the crossing of
    the radius-alpha circle on the bracketing step by bisection on the
    underlying segment; returns the point or None when the contour never
    reaches that distance.
    """
    n = len(points)
    ox, oy = origin
    prev = points[start_idx % n]
    dprev = math.hypot(prev[0] - ox, prev[1] - oy)
    for k in range(1, n + 1):
        cur = points[(start_idx + k) % n]
        dcur = math.hypot(cur[0] - ox, cur[1] - oy)
        if dprev < alpha <= dcur:
            lo, hi = 0.0, 1.0
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                p = prev + mid * (cur - prev)
                if math.hypot(p[0] - ox, p[1] - oy) < alpha:
                    lo = mid
                else:
                    hi = mid
            p = prev + hi * (cur - prev)
            return p, (start_idx + k) % n
        prev, dprev = cur, dcur
    return None


def _subpath(points: np.ndarray, start_idx: int, end_point, end_idx: int) -> np.ndarray:
    n = len(points)
    idxs = [(start_idx + k) % n for k in range((end_idx - start_idx) % n)]
    path = [points[i] for i in idxs]
    path.append(end_point)
    return np.asarray(path)


def _snap(p) -> Tuple[int, int]:
    return int(round(p[0])), int(round(p[1]))


def extract_skeleton(
    contours: Sequence[Contour],
    alpha: float,
    delta: float,
    L: float,
    step: Optional[float] = None,
) -> Skeleton:
    """Greedy skeleton of a collection of alpha-large contours.

    Repeatedly starts a new segment at the admissible contour point closest
    to the already covered subpaths (subject to the delta separation of
    subpaths and the start-proximity rule for revisited contours), walking
    clockwise to the first point at Euclidean reach alpha and snapping both
    ends to the integer lattice inside the radius-L disk.
    """
    if alpha <= 0 or delta <= 0:
        raise SkeletonError("alpha and delta must be positive")
    if alpha < 4 * delta:
        raise SkeletonError("skeleton construction assumes alpha >= 4*delta")
    for c in contours:
        if c.diameter <= alpha:
            raise SkeletonError("every contour must be alpha-large")
    if step is None:
        step = max(min(delta / 8.0, alpha / 64.0), alpha / 4096.0)
    walks = [_contour_walk_points(c, step) for c in contours]
    covered: List[np.ndarray] = []
    covered_segs = np.empty((0, 4))
    used_contour: List[int] = []
    starts: List[Tuple[int, int]] = []
    segments: List[Tuple[Tuple[int, int], Tuple[int, int]]] = []
    subpaths: List[np.ndarray] = []
    lattice_used = set()

    def candidate(ci: int, idx: int):
        pts = walks[ci]
        p = pts[idx]
        if math.hypot(p[0], p[1]) > L:
            return None
        hit = _first_at_distance(pts, idx, p, alpha)
        if hit is None:
            return None
        end_point, end_idx = hit
        sub = _subpath(pts, idx, end_point, end_idx)
        if len(covered_segs) and K.points_segs_dist(sub, covered_segs).min() < delta:
            return None
        i_l = _snap(p)
        e_l = _snap(end_point)
        if i_l == e_l or i_l in lattice_used or e_l in lattice_used:
            return None
        if math.hypot(*i_l) > L or math.hypot(*e_l) > L:
            return None
        if ci in used_contour:
            near = min(math.hypot(i_l[0] - s[0], i_l[1] - s[1]) for s in starts)
            if near > alpha + delta + SQRT2:
                return None
        d = 0.0
        if covered_segs is not None and len(covered_segs):
            d = K.point_segs_dist(p[0], p[1], covered_segs)
        return d, (i_l, e_l), sub

    while True:
        best = None
        for ci in range(len(contours)):
            pts = walks[ci]
            stride = max(1, len(pts) // 2048)
            for idx in range(0, len(pts), stride):
                cand = candidate(ci, idx)
                if cand is None:
                    continue
                key = (cand[0], cand[1][0], cand[1][1])
                if best is None or key < best[0]:
                    best = (key, ci, cand)
        if best is None:
            break
        _, ci, (d, (i_l, e_l), sub) = best
        segments.append((i_l, e_l))
        subpaths.append(sub)
        covered.append(sub)
        covered_segs = (
            np.vstack([covered_segs, open_segments(sub)]) if len(covered_segs) else open_segments(sub)
        )
        starts.append(i_l)
        used_contour.append(ci)
        lattice_used.update([i_l, e_l])
    return Skeleton(segments, subpaths, alpha, delta)


def verify_skeleton(
    skeleton: Skeleton,
    contours: Sequence[Contour],
    alpha: float,
    delta: float,
    L: float,
    tol: float = 1e-6,
) -> dict:
    """Independent check of the five skeleton conditions.

    Works from densified contour traversals only (never from the extractor's
    stored subpaths) and returns a dict of per-condition booleans plus 'ok'.
    """
    report = {"s1": True, "s2": True, "s3": True, "s4": True, "s5": True}
    segs = skeleton.segments
    verts = skeleton.vertices()
    if len(set(verts)) != len(verts):
        report["s1"] = False
    for v in verts:
        if v != (int(v[0]), int(v[1])) or math.hypot(*v) > L + tol:
            report["s1"] = False
    for i_l, e_l in segs:
        d = math.hypot(e_l[0] - i_l[0], e_l[1] - i_l[1])
        if not (alpha - SQRT2 - tol <= d <= alpha + SQRT2 + tol):
            report["s1"] = False

    step = max(min(delta / 10.0, alpha / 100.0), alpha / 8192.0)
    walks = [_contour_walk_points(c, step) for c in contours]
    matched_subpaths = []
    matched_contour = []
    for i_l, e_l in segs:
        found = None
        for ci, pts in enumerate(walks):
            d_i = np.hypot(pts[:, 0] - i_l[0], pts[:, 1] - i_l[1])
            for idx in np.nonzero(d_i <= 1.0 / SQRT2 + tol)[0]:
                hit = _first_at_distance(pts, int(idx), pts[int(idx)], alpha)
                if hit is None:
                    continue
                end_point, end_idx = hit
                if math.hypot(end_point[0] - e_l[0], end_point[1] - e_l[1]) > 1.0 / SQRT2 + step + tol:
                    continue
                sub = _subpath(pts, int(idx), end_point, end_idx)
                reach = np.hypot(sub[:, 0] - i_l[0], sub[:, 1] - i_l[1])
                if np.max(reach) > alpha + 1.0 / SQRT2 + step + tol:
                    continue
                found = (ci, sub)
                break
            if found:
                break
        if found is None:
            report["s2"] = False
            matched_subpaths.append(None)
            matched_contour.append(None)
        else:
            matched_contour.append(found[0])
            matched_subpaths.append(found[1])

    seen = set()
    for k, (i_l, _) in enumerate(segs):
        ci = matched_contour[k]
        first_use = ci is not None and ci not in seen
        if ci is not None:
            seen.add(ci)
        if k == 0 or first_use:
            continue
        near = min(math.hypot(i_l[0] - s[0][0], i_l[1] - s[0][1]) for s in segs[:k])
        if near > alpha + delta + SQRT2 + tol:
            report["s3"] = False

    starts = np.asarray([i for i, _ in segs], dtype=float)
    for pts in walks:
        if len(starts) == 0:
            report["s4"] = False
            break
        d = np.sqrt(
            np.min(
                (pts[:, 0, None] - starts[None, :, 0]) ** 2
                + (pts[:, 1, None] - starts[None, :, 1]) ** 2,
                axis=1,
            )
        )
        if np.max(d) > 2 * alpha + delta + SQRT2 + step + tol:
            report["s4"] = False

    subs = [s for s in matched_subpaths if s is not None]
    for a in range(len(subs)):
        for b in range(a + 1, len(subs)):
            if K.segs_min_dist(open_segments(subs[a]), open_segments(subs[b])) < delta - step - tol:
                report["s5"] = False
    report["ok"] = all(report[k] for k in ("s1", "s2", "s3", "s4", "s5"))
    return report


@dataclass
class IsoperimetricReport:
    skeleton_length: float
    enclosed_black_area: float
    lower_bound: float
    slack: float
    allowed_deficit: float
    ok: bool


def isoperimetric_check(
    skeleton: Skeleton,
    contours: Sequence[Contour],
    c1: float = 2.0,
    c2: float = 2.0,
) -> IsoperimetricReport:
    """Skeleton length against the isoperimetric lower bound ``2*sqrt(pi*A)``.

    ``A`` is the realized black area of the contour collection; the slack
    budget ``c1*(delta/alpha)*sqrt(A) + c2*alpha`` absorbs the finite-scale
    correction terms.
    """
    from .geometry import PolygonalConfiguration

    a = black_area(PolygonalConfiguration(list(contours)))
    length = skeleton.length
    bound = 2.0 * math.sqrt(math.pi * max(a, 0.0))
    slack = length - bound
    allowed = (
        c1 * (skeleton.delta / skeleton.alpha) * math.sqrt(max(a, 0.0)) + c2 * skeleton.alpha
        if skeleton.alpha > 0
        else 0.0
    )
    return IsoperimetricReport(length, a, bound, slack, allowed, slack >= -allowed)
