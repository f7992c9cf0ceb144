"""Direction-updating killed self-avoiding walk.

The walk moves at speed 1, redraws its direction with intensity
``update_rate`` (default 4) per covered length with deflection density
``|sin(phi)|/4`` on ``(0, 2*pi)``, and dies on contact with its own past
trace, with obstacle segments, or with the window boundary.  Rate killing is
available either as a hard exponential clock or folded into analytic weights
``exp(-kill_rate * length)`` carried by the caller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _kernels as K
from .geometry import EPS_GEOM, Line, Window

UPDATE_RATE = 4.0

STATUS_ALIVE = "alive"
KILLED_RATE = "killed_rate"
KILLED_SELF = "killed_self"
KILLED_OBSTACLE = "killed_obstacle"
KILLED_BOUNDARY = "killed_boundary"


def sample_deflection(rng) -> float:
    """Deflection angle with density |sin(phi)|/4 on (0, 2*pi)."""
    phi = math.acos(1.0 - 2.0 * rng.uniform())
    if rng.uniform() < 0.5:
        phi = 2.0 * math.pi - phi
    return phi


def rotate(direction, phi: float):
    c, s = math.cos(phi), math.sin(phi)
    dx, dy = direction
    return dx * c - dy * s, dx * s + dy * c


@dataclass
class WalkContext:
    """Static surroundings of a walk.

    ``update_rate`` and the optional steering tilt change the proposal
    dynamics only; the exact log density ratio against the canonical
    dynamics (rate 4, deflection ``|sin|/4``) accumulates in
    ``WalkState.log_ratio`` with the length-dependent part
    ``(update_rate - 4) * length`` left to the caller.
    """

    kill_rate: float = 0.0
    update_rate: float = UPDATE_RATE
    hard_kill: bool = False
    window: Optional[Window] = None
    obstacles: np.ndarray = field(default_factory=lambda: np.empty((0, 4)))
    clearance: float = EPS_GEOM
    steer_target: Optional[tuple] = None
    steer_prob: float = 0.0
    steer_cone: float = 1.0

    def log_ratio_at(self, state, length: float) -> float:
        """Full log importance ratio for the path truncated at ``length``."""
        return state.log_ratio + (self.update_rate - UPDATE_RATE) * length


class WalkState:
    """Mutable walk state: head position, direction and the past trace."""

    __slots__ = ("pos", "direction", "length", "status", "ctx", "log_ratio", "_buf", "_n")

    def __init__(self, pos, direction, ctx: WalkContext):
        self.pos = (float(pos[0]), float(pos[1]))
        n = math.hypot(*direction)
        self.direction = (direction[0] / n, direction[1] / n)
        self.length = 0.0
        self.status = STATUS_ALIVE
        self.ctx = ctx
        self.log_ratio = 0.0
        self._buf = np.empty((64, 4), dtype=np.float64)
        self._n = 0

    @property
    def alive(self) -> bool:
        return self.status == STATUS_ALIVE

    def trace(self) -> np.ndarray:
        return self._buf[: self._n]

    def _append(self, ax, ay, bx, by):
        if self._n == len(self._buf):
            self._buf = np.vstack([self._buf, np.empty_like(self._buf)])
        self._buf[self._n] = (ax, ay, bx, by)
        self._n += 1

    def clone(self) -> "WalkState":
        w = WalkState.__new__(WalkState)
        w.pos = self.pos
        w.direction = self.direction
        w.length = self.length
        w.status = self.status
        w.ctx = self.ctx
        w.log_ratio = self.log_ratio
        w._buf = self._buf[: max(self._n, 1)].copy()
        if len(w._buf) == 0:
            w._buf = np.empty((64, 4), dtype=np.float64)
        w._n = self._n
        return w


def boundary_exit_length(window: Window, pos, direction, clearance: float) -> float:
    """Length until the ray leaves the window shrunk by ``clearance``."""
    x, y = pos
    dx, dy = direction
    if window.kind == "disk":
        cx, cy = window.center
        r = window.radius - clearance
        mx, my = x - cx, y - cy
        b = mx * dx + my * dy
        c = mx * mx + my * my - r * r
        disc = b * b - c
        if disc <= 0:
            return 0.0
        return max(0.0, -b + math.sqrt(disc))
    best = math.inf
    v = window.vertices
    e = np.roll(v, -1, axis=0) - v
    for (vx, vy), (ex, ey) in zip(v, e):
        elen = math.hypot(ex, ey)
        # inward distance decreases at rate -cross(e, d)/|e|
        rate = (ex * dy - ey * dx) / elen
        if rate >= 0:
            continue
        dist = (ex * (y - vy) - ey * (x - vx)) / elen - clearance
        best = min(best, max(0.0, dist / -rate))
    return best


def step_walk(state: WalkState, rng):
    """Advance to the next event; returns the traversed segment and its kind.

    The returned tuple is ``(kind, seg, step_len)`` where ``kind`` is
    ``"update"`` or a terminal status, ``seg = (ax, ay, bx, by)`` is the piece
    of trajectory covered by this step and ``step_len`` its length.  The
    state's trace, length and status are updated in place.
    """
    if not state.alive:
        raise RuntimeError("walk is not alive")
    ctx = state.ctx
    t_prop = rng.exponential(1.0 / ctx.update_rate)
    kind = "update"
    if ctx.hard_kill and ctx.kill_rate > 0.0:
        t_kill = rng.exponential(1.0 / ctx.kill_rate)
        if t_kill < t_prop:
            t_prop, kind = t_kill, KILLED_RATE
    x, y = state.pos
    dx, dy = state.direction
    t_final = t_prop
    if ctx.window is not None:
        t_exit = boundary_exit_length(ctx.window, state.pos, state.direction, ctx.clearance)
        if t_exit <= t_final:
            t_final, kind = t_exit, KILLED_BOUNDARY
    qx, qy = x + t_final * dx, y + t_final * dy
    if state._n > 1:
        i, t = K.first_hit(x, y, qx, qy, state._buf[: state._n - 1])
        if i >= 0:
            t_final *= t
            qx, qy = x + t_final * dx, y + t_final * dy
            kind = KILLED_SELF
    if len(ctx.obstacles):
        i, t = K.first_hit(x, y, qx, qy, ctx.obstacles)
        if i >= 0:
            t_final *= t
            qx, qy = x + t_final * dx, y + t_final * dy
            kind = KILLED_OBSTACLE
    seg = (x, y, qx, qy)
    state._append(*seg)
    state.pos = (qx, qy)
    state.length += t_final
    if kind == "update":
        state.direction = rotate(state.direction, sample_deflection(rng))
    else:
        state.status = kind
    return kind, seg, t_final


def start_walk(x, delta: float, rng, ctx: Optional[WalkContext] = None) -> WalkState:
    """Start state on the boundary of the disk ``B(x, delta)``.

    A line through the disk is drawn from the restricted line measure (angle
    uniform, signed offset uniform on ``[-delta, delta]``), one of its two
    circle crossings is picked with probability 1/2, and the initial velocity
    points along the line away from the disk.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    phi = rng.uniform(0.0, math.pi)
    offset = rng.uniform(-delta, delta)
    nx, ny = math.sin(phi), math.cos(phi)
    line = Line(phi, x[0] * nx + x[1] * ny + offset)
    t_mid = line.offset_of(x)
    half = math.sqrt(delta * delta - offset * offset)
    side = 1.0 if rng.uniform() < 0.5 else -1.0
    px, py = line.point_at(t_mid + side * half)
    ddx, ddy = line.direction()
    if (ddx * (px - x[0]) + ddy * (py - x[1])) < 0:
        ddx, ddy = -ddx, -ddy
    return WalkState((px, py), (ddx, ddy), ctx or WalkContext())


def segment_circle_crossings(seg, center, r: float):
    """Crossing parameters (length units) of a segment with a circle.

    Returns a list of ``(s, entering)`` pairs sorted along the segment, where
    ``entering`` is True when the segment passes from outside to inside.
    """
    ax, ay, bx, by = seg
    dx, dy = bx - ax, by - ay
    L = math.hypot(dx, dy)
    if L <= 0:
        return []
    ux, uy = dx / L, dy / L
    mx, my = ax - center[0], ay - center[1]
    b = mx * ux + my * uy
    c = mx * mx + my * my - r * r
    disc = b * b - c
    if disc <= 0:
        return []
    sq = math.sqrt(disc)
    out = []
    for s, entering in ((-b - sq, True), (-b + sq, False)):
        if 0.0 < s <= L:
            out.append((s, entering))
    return out


def segment_line_crossing(seg, line: Line):
    """Crossing parameter (length units) of a segment with a line, or None."""
    ax, ay, bx, by = seg
    d0 = line.signed_dist((ax, ay))
    d1 = line.signed_dist((bx, by))
    if d0 == d1 or (d0 < 0) == (d1 < 0):
        return None
    L = math.hypot(bx - ax, by - ay)
    return L * d0 / (d0 - d1)
