"""Single-contour and path measures: exact-weight walk proposals and the
partition-function oracle.

The contour sampler anchors a marked vertex ``v`` in a region, draws the two
edge lines through ``v`` (angle pair with the inter-line angle law
``sin/2``), walks away along one line and records a closure opportunity each
time the trajectory crosses the other line.  Every opportunity yields a
contour whose importance weight against the length-exponential contour
measure with total weight ``exp(-(2+beta)*length)`` per line product is
exact:

    w = 2*pi * area(anchor) * exp(-(2+beta)*closing_len) * g / k

with ``k`` the number of edges (marked-vertex multiplicity), ``g`` the
correction for running the walk without the rate kill and/or with a
non-canonical direction-update rate.  Summed over opportunities and averaged
over draws this estimates the measure of contours with all vertices in the
anchor exactly; for smaller anchors the estimand carries the fraction of
vertices inside the anchor (documented, used only for tail diagnostics).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

import numpy as np

from . import _kernels as K
from .enumeration import enumerate_admissible_on_lines
from .geometry import (
    Contour,
    EPS_GEOM,
    GeometryError,
    Line,
    PolygonalConfiguration,
    Window,
    sample_poisson_lines,
)
from .walks import (
    KILLED_BOUNDARY,
    WalkContext,
    WalkState,
    sample_deflection,
    segment_circle_crossings,
    segment_line_crossing,
    start_walk,
    step_walk,
)


def sample_typical_angle(rng) -> float:
    """Inter-line angle of two measure-distributed lines, density sin/2 on (0, pi)."""
    return math.acos(1.0 - 2.0 * rng.uniform())


@dataclass
class WeightedContourProposal:
    contour: Contour
    log_target_density: float
    log_proposal_density: float

    @property
    def weight(self) -> float:
        return math.exp(self.log_target_density - self.log_proposal_density)


@dataclass
class PathFamilySpec:
    """Anchor balls for path proposals: endpoints ``x``, ``y``, radius ``delta``."""

    x: tuple
    y: tuple
    delta: float

    def __post_init__(self):
        if self.delta <= 0:
            raise GeometryError("delta must be positive")
        if self.dist <= 2.0 * self.delta:
            raise GeometryError("anchor balls must be disjoint: dist(x,y) > 2*delta")

    @property
    def dist(self) -> float:
        return math.hypot(self.y[0] - self.x[0], self.y[1] - self.x[1])


@dataclass
class WeightedPathProposal:
    points: np.ndarray
    log_target_density: float
    log_proposal_density: float

    @property
    def weight(self) -> float:
        return math.exp(self.log_target_density - self.log_proposal_density)

    @property
    def length(self) -> float:
        d = self.points[1:] - self.points[:-1]
        return float(np.sum(np.hypot(d[:, 0], d[:, 1])))


def _default_max_length(beta: float) -> float:
    return 30.0 / max(beta - 2.0, 0.75)


def contour_opportunities(
    beta: float,
    anchor: Window,
    window: Optional[Window],
    rng,
    update_rate: float = 4.0,
    max_edges: int = 64,
    max_length: Optional[float] = None,
) -> List[WeightedContourProposal]:
    """One proposal draw; returns every feasible closure as a weighted contour.

    The rate kill is folded into the weights, so a draw can serve several
    nested closure opportunities along one trajectory.
    """
    if beta < 2.0:
        raise ValueError("contour proposals need beta >= 2")
    if max_length is None:
        max_length = _default_max_length(beta)
    v = anchor.sample_point(rng)
    if window is not None and not window.contains(v, EPS_GEOM):
        return []
    phi1 = rng.uniform(0.0, math.pi)
    phi2 = (phi1 + sample_typical_angle(rng)) % math.pi
    if abs(math.sin(phi1 - phi2)) < 1e-7:
        return []
    closing = Line.through(v, phi2)
    d1x, d1y = math.cos(phi1), -math.sin(phi1)
    if rng.uniform() < 0.5:
        d1x, d1y = -d1x, -d1y
    ctx = WalkContext(kill_rate=0.0, update_rate=update_rate, window=window)
    state = WalkState(v, (d1x, d1y), ctx)
    anchor_area = anchor.area()
    out: List[WeightedContourProposal] = []
    verts: List[tuple] = [v]
    log_rate_corr = 0.0
    n_updates = 0
    while state.alive and state._n < max_edges and state.length < max_length:
        length_before = state.length
        kind, seg, step_len = step_walk(state, rng)
        s = segment_line_crossing(seg, closing)
        if s is not None and state._n >= 2:
            p = (seg[0] + s * (seg[2] - seg[0]) / step_len * 1.0,
                 seg[1] + s * (seg[3] - seg[1]) / step_len * 1.0)
            cand = _close_contour(
                verts, p, v, state, s, length_before, beta, update_rate,
                n_updates, anchor_area,
            )
            if cand is not None:
                out.append(cand)
        if kind == "update":
            verts.append(state.pos)
            n_updates += 1
        else:
            break
    return out


def _close_contour(verts, p, v, state, s, length_before, beta, update_rate,
                   n_updates, anchor_area):
    closing_len = math.hypot(p[0] - v[0], p[1] - v[1])
    if closing_len < 1e-7:
        return None
    trace = state.trace()
    prior = trace[: len(verts) - 1]
    if len(prior):
        i, t = K.first_hit(p[0], p[1], v[0], v[1], prior)
        if i >= 0 and not (i == 0 and t > 1.0 - 1e-9):
            return None
    seg = trace[len(verts) - 1]
    ux, uy = seg[2] - seg[0], seg[3] - seg[1]
    un = math.hypot(ux, uy)
    cx, cy = (v[0] - p[0]) / closing_len, (v[1] - p[1]) / closing_len
    if abs(ux / un * cy - uy / un * cx) < 1e-7:
        return None
    poly = np.array(verts + [p])
    try:
        contour = Contour(poly)
    except GeometryError:
        return None
    walk_len = length_before + s
    k = len(poly)
    log_g = -(beta - 2.0) * walk_len
    if update_rate != 4.0:
        log_g += (update_rate - 4.0) * walk_len + n_updates * math.log(4.0 / update_rate)
    log_target = -(2.0 + beta) * (walk_len + closing_len)
    log_weight = (
        math.log(2.0 * math.pi * anchor_area)
        - (2.0 + beta) * closing_len
        + log_g
        - math.log(k)
    )
    return WeightedContourProposal(contour, log_target, log_target - log_weight)


def propose_free_contour(
    beta: float,
    anchor: Window,
    window: Optional[Window],
    rng,
    **kwargs,
) -> Optional[WeightedContourProposal]:
    """One weighted contour through the anchor, or None on rejection.

    When a trajectory offers several closures one is picked proportionally
    to weight and carries the total weight of the draw, which preserves the
    draw's expectation.
    """
    cands = contour_opportunities(beta, anchor, window, rng, **kwargs)
    if not cands:
        return None
    w = np.array([c.weight for c in cands])
    total = float(w.sum())
    pick = cands[int(rng.choice(len(cands), p=w / total))]
    log_prop = pick.log_target_density - math.log(total)
    return WeightedContourProposal(pick.contour, pick.log_target_density, log_prop)


def contour_measure_mass(
    beta: float,
    anchor: Window,
    window: Optional[Window],
    rng,
    draws: int,
    accept: Optional[Callable[[Contour], bool]] = None,
    **kwargs,
):
    """Monte Carlo mass of the tilted contour measure on anchored contours.

    Returns ``(mass, stderr)``; ``accept`` restricts the measure (birth
    filters of the field samplers).
    """
    totals = np.zeros(draws)
    for i in range(draws):
        for cand in contour_opportunities(beta, anchor, window, rng, **kwargs):
            if accept is None or accept(cand.contour):
                totals[i] += cand.weight
    mass = float(totals.mean())
    stderr = float(totals.std(ddof=1) / math.sqrt(draws)) if draws > 1 else math.inf
    return mass, stderr


def path_opportunities(
    spec: PathFamilySpec,
    beta: float,
    window: Optional[Window],
    rng,
    update_rate: float = 4.0,
    max_entries: int = 32,
    max_length: Optional[float] = None,
    max_edges: int = 4096,
) -> List[WeightedPathProposal]:
    """Weighted self-avoiding paths between the anchor balls of ``spec``.

    One walk is started on the boundary of ``B(x, delta)`` by the line rule;
    each inward crossing of ``B(y, delta)`` yields the path truncated there,
    with exact weight ``4*pi*delta * exp(-(beta-2)*length) * g``.
    """
    if beta < 2.0:
        raise ValueError("path proposals need beta >= 2")
    if max_length is None:
        max_length = spec.dist + _default_max_length(beta) * 2.0
    ctx = WalkContext(kill_rate=0.0, update_rate=update_rate, window=window)
    state = start_walk(spec.x, spec.delta, rng, ctx)
    if window is not None and not window.contains(state.pos):
        return []
    verts = [state.pos]
    base = math.log(4.0 * math.pi * spec.delta)
    out: List[WeightedPathProposal] = []
    n_updates = 0
    while state.alive and state._n < max_edges and state.length < max_length:
        length_before = state.length
        kind, seg, step_len = step_walk(state, rng)
        ax, ay = seg[0], seg[1]
        ux, uy = (seg[2] - ax) / step_len, (seg[3] - ay) / step_len
        for s, entering in segment_circle_crossings(seg, spec.y, spec.delta):
            if not entering:
                continue
            pts = np.array(verts + [(ax + s * ux, ay + s * uy)])
            L = length_before + s
            log_g = -(beta - 2.0) * L
            if update_rate != 4.0:
                log_g += (update_rate - 4.0) * L + n_updates * math.log(4.0 / update_rate)
            log_target = -(2.0 + beta) * L
            log_w = base + log_g
            out.append(WeightedPathProposal(pts, log_target, log_target - log_w))
            if len(out) >= max_entries:
                return out
        if kind == "update":
            verts.append(state.pos)
            n_updates += 1
        else:
            break
    return out


def propose_free_path(
    spec: PathFamilySpec,
    beta: float,
    window: Optional[Window],
    rng,
    **kwargs,
) -> Optional[WeightedPathProposal]:
    """One weighted connecting path, or None on rejection."""
    cands = path_opportunities(spec, beta, window, rng, **kwargs)
    if not cands:
        return None
    w = np.array([c.weight for c in cands])
    total = float(w.sum())
    pick = cands[int(rng.choice(len(cands), p=w / total))]
    return WeightedPathProposal(
        pick.points, pick.log_target_density, pick.log_target_density - math.log(total)
    )


# ---------------------------------------------------------------------------
# partition function


@dataclass
class PartitionEstimate:
    window: dict
    mode: str
    replicas: int
    estimate: float
    stderr: float
    cap_exceeded: int = 0

    def to_record(self) -> dict:
        return {
            "window": self.window,
            "mode": self.mode,
            "replicas": self.replicas,
            "estimate": self.estimate,
            "stderr": self.stderr,
            "cap_exceeded": self.cap_exceeded,
        }


def estimate_partition_function(
    window: Window,
    boundary_mode: str = "free",
    replicas: int = 10000,
    rng=None,
    cap: int = 8,
) -> PartitionEstimate:
    """Mean over line-process draws of the configuration sum
    ``sum_gamma exp(-2*length(gamma))`` over admissible configurations using
    every sampled line; for free boundary conditions this targets
    ``exp(pi*Area)``.

    Draws with more lines than the enumeration cap contribute zero and are
    counted in ``cap_exceeded`` (one-sided, negligible for small windows).
    """
    if replicas <= 0:
        raise ValueError("replicas must be positive")
    from scipy.stats import poisson

    mean_lines = window.perimeter()
    if poisson.sf(cap, mean_lines) > 1e-6:
        warnings.warn(
            f"window perimeter {mean_lines:.2f}: line count exceeds the "
            f"enumeration cap {cap} too often for a reliable estimate",
            stacklevel=2,
        )
    values = np.zeros(replicas)
    exceeded = 0
    for r in range(replicas):
        lines = sample_poisson_lines(window, rng)
        if len(lines) > cap:
            exceeded += 1
            continue
        total = 0.0
        for config in enumerate_admissible_on_lines(lines, window, boundary_mode, cap):
            total += math.exp(-2.0 * config.total_length)
        values[r] = total
    return PartitionEstimate(
        window.to_dict(),
        boundary_mode,
        replicas,
        float(values.mean()),
        float(values.std(ddof=1) / math.sqrt(replicas)),
        exceeded,
    )
