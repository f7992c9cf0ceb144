"""Event-driven particle construction of the basic polygonal field.

The window is read as time-space: the first coordinate is time, the second
the position of a one-dimensional particle.  Particles appear at interior
sites (rate pi per unit area, two particles with the inter-line velocity
pair law) and at boundary entry points of a Poisson line process, move
ballistically, redraw velocities through the jump kernel
``q(v,du) = |u-v| (1+u^2)^{-3/2} du``, die in pairs on collision and die on
the boundary.  Stitching the traced trajectories yields a free-boundary
configuration: closed contours plus boundary-to-boundary chains.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from .geometry import Contour, GeometryError, PolygonalConfiguration, Window, sample_poisson_lines
from .walks import boundary_exit_length


def sample_typical_angle(rng) -> float:
    """Angle between two measure-distributed lines; density sin(phi)/2 on (0, pi)."""
    return math.acos(1.0 - 2.0 * rng.uniform())


def _velocity_of_angle(phi: float) -> float:
    c = math.cos(phi)
    if abs(c) < 1e-12:
        raise ZeroDivisionError("line parallel to the space axis")
    return -math.sin(phi) / c


def _angle_of_velocity(v: float) -> float:
    return math.atan2(-v, 1.0) % math.pi


def sample_velocity_pair(rng) -> Tuple[float, float]:
    """Initial velocity pair of an interior birth site.

    Equivalent to drawing two line directions whose inter-line angle follows
    sin/2; the joint density is proportional to
    ``|v'-v''| (1+v'^2)^{-3/2} (1+v''^2)^{-3/2}``.
    """
    while True:
        phi1 = rng.uniform(0.0, math.pi)
        phi2 = (phi1 + sample_typical_angle(rng)) % math.pi
        try:
            return _velocity_of_angle(phi1), _velocity_of_angle(phi2)
        except ZeroDivisionError:
            continue


def jump_rate(v: float) -> float:
    """Total velocity-jump rate ``q(v) = 2*sqrt(1+v^2)`` (closed form)."""
    return 2.0 * math.sqrt(1.0 + v * v)


def velocity_jump_kernel(v: float, rng) -> Tuple[float, float]:
    """Waiting time (Exp with rate q(v)) and the new velocity.

    The new velocity tilts the old line by a typical angle, which realizes
    the normalized kernel ``q(v, du)/q(v)`` exactly.
    """
    wait = rng.exponential(1.0 / jump_rate(v))
    while True:
        phi = (_angle_of_velocity(v) + sample_typical_angle(rng)) % math.pi
        try:
            return wait, _velocity_of_angle(phi)
        except ZeroDivisionError:
            continue


@dataclass
class _Particle:
    pid: int
    t0: float
    y0: float
    v: float
    start_conn: int
    version: int = 0
    vertices: List[Tuple[float, float]] = field(default_factory=list)
    end_conn: int = -1

    def y_at(self, t: float) -> float:
        return self.y0 + self.v * (t - self.t0)


@dataclass
class ArakRun:
    configuration: PolygonalConfiguration
    n_interior_births: int
    n_boundary_births: int
    n_collisions: int
    n_jumps: int
    flagged_multi_collision: bool


class EventOverflow(RuntimeError):
    pass


def run_arak(window: Window, rng, max_events: int = 2_000_000) -> ArakRun:
    """One exact draw of the free-boundary polygonal field on a convex window."""
    if window.kind == "polygon":
        pass  # convexity enforced by the Window constructor
    sim = _Simulation(window, rng, max_events)
    return sim.run()


class _Simulation:
    def __init__(self, window: Window, rng, max_events: int):
        self.window = window
        self.rng = rng
        self.max_events = max_events
        self.heap: list = []
        self.seq = itertools.count()
        self.particles: Dict[int, _Particle] = {}
        self.order: List[int] = []  # alive pids sorted by current y
        self.pid_counter = itertools.count()
        self.conn_counter = itertools.count()
        self.now = 0.0
        self.n_collisions = 0
        self.n_jumps = 0
        self.flag_multi = False

    # -- event plumbing ------------------------------------------------

    def _push(self, t: float, kind: str, payload):
        heapq.heappush(self.heap, (t, next(self.seq), kind, payload))

    def _exit_time(self, p: _Particle) -> float:
        speed = math.hypot(1.0, p.v)
        s = boundary_exit_length(
            self.window, (p.t0 + (self.now - p.t0), p.y_at(self.now)), (1.0 / speed, p.v / speed), 0.0
        )
        return self.now + s / speed

    def _schedule_particle(self, p: _Particle):
        wait, v_new = velocity_jump_kernel(p.v, self.rng)
        self._push(self.now + wait, "jump", (p.pid, p.version, v_new))
        self._push(self._exit_time(p), "exit", (p.pid, p.version))

    def _pair_collision(self, pa: _Particle, pb: _Particle):
        dv = pa.v - pb.v
        dy = pb.y_at(self.now) - pa.y_at(self.now)
        if dv == 0.0:
            return
        t_star = self.now + dy / dv
        if t_star <= self.now:
            return
        self._push(t_star, "collide", (pa.pid, pa.version, pb.pid, pb.version))

    def _repair_neighbors(self, idx: int):
        """Push collision events for the order-adjacent pairs around index."""
        for a, b in ((idx - 1, idx), (idx, idx + 1)):
            if 0 <= a < len(self.order) and 0 <= b < len(self.order):
                self._pair_collision(self.particles[self.order[a]], self.particles[self.order[b]])

    def _insert_particle(self, t: float, y: float, v: float, conn: int) -> _Particle:
        pid = next(self.pid_counter)
        p = _Particle(pid, t, y, v, conn, vertices=[(t, y)])
        self.particles[pid] = p
        lo, hi = 0, len(self.order)
        while lo < hi:
            mid = (lo + hi) // 2
            q = self.particles[self.order[mid]]
            key_q = (q.y_at(t), q.v)
            if key_q < (y, v):
                lo = mid + 1
            else:
                hi = mid
        self.order.insert(lo, pid)
        self._schedule_particle(p)
        self._repair_neighbors(lo)
        return p

    def _remove_particle(self, p: _Particle, t: float, y: float, conn: int):
        p.vertices.append((t, y))
        p.end_conn = conn
        p.version += 1
        idx = self.order.index(p.pid)
        self.order.pop(idx)
        del_pid = p.pid
        if 0 < idx <= len(self.order) - 1:
            self._pair_collision(
                self.particles[self.order[idx - 1]], self.particles[self.order[idx]]
            )
        self.dead.append(p)

    # -- main loop -----------------------------------------------------

    def run(self) -> ArakRun:
        rng = self.rng
        self.dead: List[_Particle] = []
        area = self.window.area()
        n_int = rng.poisson(math.pi * area)
        for _ in range(n_int):
            t, y = self.window.sample_point(rng)
            self._push(t, "ibirth", (t, y))
        lines = sample_poisson_lines(self.window, rng)
        n_bnd = 0
        for ln in lines:
            dx, dy = ln.direction()
            if abs(dx) < 1e-12:
                continue
            ch = self.window.chord(ln)
            if ch is None:
                continue
            t_par = ch[0] if dx > 0 else ch[1]
            px, py = ln.point_at(t_par)
            self._push(px, "bbirth", (px, py, dy / dx))
            n_bnd += 1

        events = 0
        while self.heap:
            events += 1
            if events > self.max_events:
                raise EventOverflow("event budget exhausted")
            t, _, kind, payload = heapq.heappop(self.heap)
            self.now = t
            if kind == "ibirth":
                tb, yb = payload
                v1, v2 = sample_velocity_pair(rng)
                conn = next(self.conn_counter)
                self._insert_particle(tb, yb, min(v1, v2), conn)
                self._insert_particle(tb, yb, max(v1, v2), conn)
            elif kind == "bbirth":
                tb, yb, v = payload
                self._insert_particle(tb, yb, v, next(self.conn_counter))
            elif kind == "jump":
                pid, version, v_new = payload
                p = self.particles.get(pid)
                if p is None or p.version != version or p.pid not in set(self.order):
                    continue
                y = p.y_at(t)
                p.vertices.append((t, y))
                p.t0, p.y0, p.v = t, y, v_new
                p.version += 1
                self.n_jumps += 1
                self._schedule_particle(p)
                self._repair_neighbors(self.order.index(pid))
            elif kind == "exit":
                pid, version = payload
                p = self.particles.get(pid)
                if p is None or p.version != version or pid not in self.order:
                    continue
                self._remove_particle(p, t, p.y_at(t), next(self.conn_counter))
                del self.particles[pid]
            elif kind == "collide":
                pa_id, va, pb_id, vb = payload
                pa = self.particles.get(pa_id)
                pb = self.particles.get(pb_id)
                if pa is None or pb is None or pa.version != va or pb.version != vb:
                    continue
                ia = self.order.index(pa_id)
                if not (ia + 1 < len(self.order) and self.order[ia + 1] == pb_id):
                    continue
                y = pa.y_at(t)
                near = [
                    q
                    for q in (self.particles[pid] for pid in self.order)
                    if q.pid not in (pa_id, pb_id) and abs(q.y_at(t) - y) < 1e-9
                ]
                if near:
                    self.flag_multi = True
                conn = next(self.conn_counter)
                self._remove_particle(pb, t, y, conn)
                self._remove_particle(pa, t, y, conn)
                del self.particles[pa_id], self.particles[pb_id]
                self.n_collisions += 1
        config = self._stitch()
        return ArakRun(config, n_int, n_bnd, self.n_collisions, self.n_jumps, self.flag_multi)

    # -- output assembly -----------------------------------------------

    def _stitch(self) -> PolygonalConfiguration:
        """Join particle polylines at shared connectors into chains and loops."""
        parts = {p.pid: p for p in self.dead}
        by_conn: Dict[int, list] = {}
        for p in self.dead:
            by_conn.setdefault(p.start_conn, []).append((p.pid, "start"))
            by_conn.setdefault(p.end_conn, []).append((p.pid, "end"))

        def conn_of(end):
            p = parts[end[0]]
            return p.start_conn if end[1] == "start" else p.end_conn

        def partner(end):
            others = [e for e in by_conn[conn_of(end)] if e != end]
            return others[0] if others else None

        def flipped(end):
            return (end[0], "end" if end[1] == "start" else "start")

        visited = set()

        def traverse(entry):
            pts: List[Tuple[float, float]] = []
            cur = entry
            while True:
                pid, side = cur
                visited.add(pid)
                seg = parts[pid].vertices if side == "start" else parts[pid].vertices[::-1]
                pts.extend(seg if not pts else seg[1:])
                nxt = partner(flipped(cur))
                if nxt is None or nxt[0] in visited:
                    return pts
                cur = nxt

        contours, arcs = [], []
        # chains start at a free connector; whatever remains afterwards is a loop
        for p in self.dead:
            if p.pid in visited:
                continue
            for side in ("start", "end"):
                if partner((p.pid, side)) is None:
                    arcs.append(np.asarray(traverse((p.pid, side))))
                    break
        for p in self.dead:
            if p.pid in visited:
                continue
            pts = traverse((p.pid, "start"))
            try:
                contours.append(Contour(np.asarray(pts[:-1])))
            except GeometryError:
                arcs.append(np.asarray(pts))
        return PolygonalConfiguration(contours, arcs)
