"""Colouring observables: magnetisation, large-contour statistics and the
droplet report.

The colouring paints the unbounded component white and flips across every
contour, so a point at nesting depth ``d`` is black iff ``d`` is odd.  With
disjoint (possibly nested) contours the black area inside a region ``U``
telescopes over contours:

    M_U = -Area(U) + 2 * sum_theta (-1)^depth(theta) * Area(Int theta ∩ U).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import _kernels as K
from .geometry import (
    Contour,
    GeometryError,
    PolygonalConfiguration,
    Window,
    best_circle_fit,
    circle_hausdorff,
    region_polygon_area,
)


def contour_depths(contours: Sequence[Contour]) -> List[int]:
    """Nesting depth of each contour inside the collection (0 = outermost)."""
    depths = []
    for i, c in enumerate(contours):
        p = c.verts[0]
        depths.append(
            sum(1 for j, o in enumerate(contours) if j != i and o.contains_point(p))
        )
    return depths


def magnetisation(config: PolygonalConfiguration, region: Window) -> float:
    """Black-minus-white area of the coloured configuration inside a region."""
    m = -region.area()
    for c, d in zip(config.contours, contour_depths(config.contours)):
        m += 2.0 * (-1) ** d * region_polygon_area(c.verts, region)
    return m


def black_area(config: PolygonalConfiguration) -> float:
    """Total area coloured black (odd nesting depth)."""
    return sum(
        (-1) ** d * c.area for c, d in zip(config.contours, contour_depths(config.contours))
    )


def magnetisation_inside_polygon(
    contours: Sequence[Contour], host: Contour, region: Window
) -> float:
    """Magnetisation of ``contours`` restricted to ``region ∩ Int(host)``.

    Assumes ``host`` is disjoint from every contour, so a contour is either
    nested inside the host or fully outside it.
    """
    m = -region_polygon_area(host.verts, region)
    inside = [c for c in contours if host.contains_point(c.verts[0])]
    for c, d in zip(inside, contour_depths(inside)):
        m += 2.0 * (-1) ** d * region_polygon_area(c.verts, region)
    return m


def contour_hits_disk(c: Contour, center, radius: float) -> bool:
    return K.point_segs_dist(center[0], center[1], c.segments()) <= radius


def large_contours(
    config: PolygonalConfiguration, alpha: float, L: float
) -> Tuple[List[Contour], float]:
    """Contours of diameter above ``alpha`` meeting the disk of radius ``L``."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    out = [
        c
        for c in config.contours
        if c.diameter > alpha and contour_hits_disk(c, (0.0, 0.0), L)
    ]
    return out, sum(c.length for c in out)


def _segment_dist_to_circle(seg, L: float) -> float:
    """Distance from a segment to the circle of radius L about the origin."""
    dmin = K.point_segs_dist(0.0, 0.0, np.asarray([seg]))
    dmax = max(math.hypot(seg[0], seg[1]), math.hypot(seg[2], seg[3]))
    if dmin <= L <= dmax:
        return 0.0
    return min(abs(dmin - L), abs(dmax - L))


def dist_to_circle(c: Contour, L: float) -> float:
    return min(_segment_dist_to_circle(s, L) for s in c.segments())


def check_no_boundary_large(config: PolygonalConfiguration, alpha: float, L: float) -> bool:
    """No contour of diameter above alpha within ``6*alpha`` of the radius-L circle."""
    if 6.0 * alpha >= L:
        raise ValueError("need 6*alpha < L")
    for c in config.contours:
        if c.diameter > alpha and dist_to_circle(c, L) < 6.0 * alpha:
            return False
    return True


@dataclass
class WulffReport:
    """Per-sample droplet metrics at excess density ``a``."""

    a: float
    L: float
    c_large: float
    target_magnetisation: float
    magnetisation: float
    wulff_radius: float
    n_large_contours: int
    theta_large: Optional[list] = None
    hausdorff_to_circle: float = math.nan
    fit_center: Optional[tuple] = None

    def to_record(self) -> dict:
        return {
            "a": self.a,
            "L": self.L,
            "c_large": self.c_large,
            "target_magnetisation": self.target_magnetisation,
            "magnetisation": self.magnetisation,
            "wulff_radius": self.wulff_radius,
            "n_large_contours": self.n_large_contours,
            "theta_large": self.theta_large,
            "hausdorff_to_circle": self.hausdorff_to_circle,
            "fit_center": list(self.fit_center) if self.fit_center else None,
        }


def wulff_radius(a: float, m_beta: float, L: float) -> float:
    return L * math.sqrt(a / (2.0 * math.pi * abs(m_beta)))


def wulff_report(
    config: PolygonalConfiguration,
    a: float,
    m_beta_estimate: float,
    L: float,
    c_large: float = 1.0,
) -> WulffReport:
    """Droplet metrics: large-contour count, circle fit, constraint status."""
    if not 0.0 < a < 2.0 * math.pi * abs(m_beta_estimate):
        raise ValueError("excess density a must fall in (0, 2*pi*|M|)")
    radius = wulff_radius(a, m_beta_estimate, L)
    threshold = c_large * math.log(L)
    larges, _ = large_contours(config, threshold, L)
    m_l = magnetisation(config, Window.disk(L))
    target = m_beta_estimate * math.pi * L**2 + a * L**2
    report = WulffReport(
        a=a,
        L=L,
        c_large=c_large,
        target_magnetisation=target,
        magnetisation=m_l,
        wulff_radius=radius,
        n_large_contours=len(larges),
    )
    if len(larges) == 1:
        theta = larges[0]
        center, dist = best_circle_fit(theta, radius)
        report.theta_large = theta.verts.tolist()
        report.hausdorff_to_circle = dist
        report.fit_center = center
    return report
