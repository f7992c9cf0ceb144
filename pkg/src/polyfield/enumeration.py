"""Exhaustive enumeration of admissible configurations on a few lines.

Given lines ``l_1..l_n``, every admissible configuration drawing exactly one
positive-length interval from each line is produced.  In ``empty`` mode all
components are closed polygons strictly inside the window; ``free`` mode
additionally allows open chains whose end segments run to the window
boundary (degree-1 boundary vertices).

Validity is decided in crossing-parameter space: line ``i`` carries the
interval between its two designated vertex parameters, and a candidate is
admissible iff no mutual crossing falls strictly inside both intervals and
no interval endpoint sits on the interior of another interval.  Distinct
non-parallel lines make the co-linearity rule vacuous here; near-parallel
pairs are refused up front.

Combinatorial, intended for small ``n`` (default cap 8); this is the oracle
backing the partition-function check.
"""

from __future__ import annotations

import itertools
import math
from typing import List, Optional, Sequence

import numpy as np

from .geometry import (
    Contour,
    EPS_GEOM,
    GeometryError,
    Line,
    NearParallelLines,
    PolygonalConfiguration,
    Window,
    line_intersection,
)


class EnumerationCapExceeded(GeometryError):
    pass


def _set_partitions(items):
    """All partitions of a list into unordered blocks."""
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[head]] + part
        for i in range(len(part)):
            yield part[:i] + [[head] + part[i]] + part[i + 1 :]


def _cycle_orders(block):
    """Distinct cyclic orders of a block, up to rotation and reflection."""
    if len(block) == 3:
        yield tuple(block)
        return
    first, rest = block[0], block[1:]
    seen = set()
    for perm in itertools.permutations(rest):
        order = (first,) + perm
        if order in seen:
            continue
        seen.add(order)
        seen.add((first,) + perm[::-1])
        yield order


def _chain_orders(block):
    """Distinct linear orders of a block, up to reversal."""
    if len(block) == 1:
        yield tuple(block)
        return
    seen = set()
    for perm in itertools.permutations(block):
        if perm in seen:
            continue
        seen.add(perm)
        seen.add(perm[::-1])
        yield perm


class _ParamSpace:
    """Crossing parameters of each line pair and window chord ranges."""

    def __init__(self, lines: Sequence[Line], window: Window, eps: float):
        n = len(lines)
        self.lines = lines
        self.eps = eps
        self.t = np.full((n, n), np.nan)
        for a, b in itertools.combinations(range(n), 2):
            p = line_intersection(lines[a], lines[b])
            self.t[a, b] = lines[a].offset_of(p)
            self.t[b, a] = lines[b].offset_of(p)
        self.chord = [window.chord(ln) for ln in lines]

    def interior(self, i: int, t: float, clearance: float) -> bool:
        ch = self.chord[i]
        return ch is not None and ch[0] + clearance < t < ch[1] - clearance


def _assemble(lines, structure):
    """Materialize a validated structure into contours and arcs."""
    contours, arcs = [], []
    for kind, order, ends in structure:
        if kind == "cycle":
            pts = [
                line_intersection(lines[order[k]], lines[order[(k + 1) % len(order)]])
                for k in range(len(order))
            ]
            contours.append(Contour(np.asarray(pts)))
        else:
            pts = [lines[order[0]].point_at(ends[0])]
            for k in range(len(order) - 1):
                pts.append(line_intersection(lines[order[k]], lines[order[k + 1]]))
            pts.append(lines[order[-1]].point_at(ends[1]))
            arcs.append(np.asarray(pts))
    return PolygonalConfiguration(contours, arcs)


def enumerate_admissible_on_lines(
    lines: Sequence[Line],
    window: Window,
    boundary_mode: str = "empty",
    cap: int = 8,
    eps: float = EPS_GEOM,
) -> List[PolygonalConfiguration]:
    """All admissible configurations using each input line exactly once."""
    if boundary_mode not in ("empty", "free"):
        raise ValueError("boundary_mode must be 'empty' or 'free'")
    n = len(lines)
    if n > cap:
        raise EnumerationCapExceeded(f"{n} lines exceeds enumeration cap {cap}")
    if n == 0:
        return [PolygonalConfiguration.empty()]
    for a, b in itertools.combinations(range(n), 2):
        if abs(math.sin(lines[a].phi - lines[b].phi)) < eps:
            raise NearParallelLines(f"lines {a} and {b} are near-parallel")
    ps = _ParamSpace(lines, window, eps)
    if any(c is None for c in ps.chord):
        return []
    free = boundary_mode == "free"

    def cycle_intervals(order):
        m = len(order)
        iv = {}
        for k in range(m):
            i = order[k]
            ta = ps.t[i, order[(k - 1) % m]]
            tb = ps.t[i, order[(k + 1) % m]]
            if abs(tb - ta) <= eps:
                return None
            if not (ps.interior(i, ta, eps) and ps.interior(i, tb, eps)):
                return None
            iv[i] = (min(ta, tb), max(ta, tb))
        return iv

    def chain_intervals(order, ends):
        iv = {}
        m = len(order)
        for k in range(m):
            i = order[k]
            ta = ends[0] if k == 0 else ps.t[i, order[k - 1]]
            tb = ends[1] if k == m - 1 else ps.t[i, order[k + 1]]
            if abs(tb - ta) <= eps:
                return None
            iv[i] = (min(ta, tb), max(ta, tb))
            if 0 < k < m - 1 and not (
                ps.interior(i, ta, eps) and ps.interior(i, tb, eps)
            ):
                return None
        if m > 1:
            if not ps.interior(order[0], ps.t[order[0], order[1]], eps):
                return None
            if not ps.interior(order[-1], ps.t[order[-1], order[-2]], eps):
                return None
        return iv

    def block_variants(block):
        """(intervals, vertex-pair set, structure) per arrangement of a block."""
        out = []
        if len(block) >= 3:
            for order in _cycle_orders(block):
                iv = cycle_intervals(order)
                if iv is None:
                    continue
                joints = {
                    frozenset((order[k], order[(k + 1) % len(order)]))
                    for k in range(len(order))
                }
                out.append((iv, joints, ("cycle", order, None)))
        if free:
            for order in _chain_orders(block):
                m = len(order)
                joints = {frozenset((order[k], order[k + 1])) for k in range(m - 1)}
                ch0 = ps.chord[order[0]]
                ch1 = ps.chord[order[-1]]
                if m == 1:
                    iv = chain_intervals(order, ch0)
                    if iv is not None:
                        out.append((iv, joints, ("chain", order, ch0)))
                    continue
                for e0 in ch0:
                    for e1 in ch1:
                        iv = chain_intervals(order, (e0, e1))
                        if iv is not None:
                            out.append((iv, joints, ("chain", order, (e0, e1))))
        return out

    def compatible(intervals, joints) -> bool:
        """No stray contact: crossings inside both intervals must be joints."""
        items = list(intervals.items())
        for (i, (a0, a1)), (j, (b0, b1)) in itertools.combinations(items, 2):
            tij = ps.t[i, j]
            tji = ps.t[j, i]
            on_i = a0 - eps <= tij <= a1 + eps
            on_j = b0 - eps <= tji <= b1 + eps
            if not (on_i and on_j):
                continue
            end_i = min(abs(tij - a0), abs(tij - a1)) <= eps
            end_j = min(abs(tji - b0), abs(tji - b1)) <= eps
            if not (end_i and end_j and frozenset((i, j)) in joints):
                return False
        return True

    memo = {}

    def variants_of(block):
        key = tuple(block)
        if key not in memo:
            memo[key] = block_variants(block)
        return memo[key]

    configs = []
    for partition in _set_partitions(list(range(n))):
        if not free and any(len(b) < 3 for b in partition):
            continue
        per_block = [variants_of(b) for b in partition]
        if any(not v for v in per_block):
            continue
        for combo in itertools.product(*per_block):
            intervals = {}
            joints = set()
            for iv, js, _ in combo:
                intervals.update(iv)
                joints |= js
            if not compatible(intervals, joints):
                continue
            try:
                configs.append(_assemble(lines, [st for _, _, st in combo]))
            except GeometryError:
                continue
    return configs
