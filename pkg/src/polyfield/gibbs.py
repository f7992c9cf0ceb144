"""Time-space contour birth-and-death sampler and its modifications.

The stationary free process is a Poisson rain of weighted-contour births
(rate calibrated from the proposal mass) with unit-rate exponential
lifetimes.  Trimming resolves acceptance recursively: an instance is
accepted iff it touches no accepted instance alive at its birth; with an
area field the birth tilt drops to ``beta/2`` and acceptance gains a
Bernoulli factor ``exp(-(beta/2)*len + h*dM)``.

Birth marks are drawn by self-normalized resampling of exact-weight
proposals inside small batches; the residual bias vanishes with the batch
size and the batch effective sample size is reported in the diagnostics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

import numpy as np

from . import _kernels as K
from .ensembles import contour_opportunities
from .geometry import Contour, EPS_GEOM, PolygonalConfiguration, Window


class HorizonTooShort(RuntimeError):
    """Ancestry reaches the start of the simulated time window."""


@dataclass(frozen=True)
class Cutoff:
    """Reject newborn contours with diameter above ``alpha`` hitting ``region``."""

    alpha: float
    region: Window

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError("cutoff threshold must be positive")


@dataclass(frozen=True)
class AreaField:
    """Magnetisation tilt ``exp(h * M_region)`` on the field restricted to region."""

    h: float
    region: Window


@dataclass(frozen=True)
class FieldSpec:
    """Parameters of one sampled field."""

    beta: float
    window: Window
    cutoff: Optional[Cutoff] = None
    forbidden: Optional[Window] = None
    area_field: Optional[AreaField] = None

    def __post_init__(self):
        if self.beta < 2.0:
            raise ValueError("field sampling needs beta >= 2")
        if self.area_field is not None:
            if self.cutoff is None:
                raise ValueError("an area field requires a cutoff (bounded dM)")
            if self.beta < 4.0:
                raise ValueError("area-field construction needs beta >= 4")
            bound = self.beta / (math.pi * self.cutoff.alpha)
            if abs(self.area_field.h) > bound + 1e-12:
                raise ValueError(
                    f"|h|={abs(self.area_field.h):.4g} violates the stability "
                    f"bound beta/(pi*alpha)={bound:.4g}"
                )

    @property
    def birth_tilt(self) -> float:
        return self.beta / 2.0 if self.area_field is not None else self.beta

    def to_dict(self) -> dict:
        d = {"beta": self.beta, "window": self.window.to_dict()}
        if self.cutoff:
            d["cutoff"] = {"alpha": self.cutoff.alpha, "region": self.cutoff.region.to_dict()}
        if self.forbidden:
            d["forbidden"] = self.forbidden.to_dict()
        if self.area_field:
            d["area_field"] = {"h": self.area_field.h, "region": self.area_field.region.to_dict()}
        return d


@dataclass
class TimeSpaceInstance:
    contour: Contour
    birth: float
    death: float
    accepted: Optional[bool] = None
    index: int = -1

    @property
    def lifetime(self) -> float:
        return self.death - self.birth

    def alive_at(self, s: float) -> bool:
        return self.birth <= s < self.death


@dataclass
class Clan:
    members: tuple
    root: str

    def __len__(self):
        return len(self.members)

    @property
    def diameter(self) -> float:
        pts = [c for inst in self.members for c in inst.contour.verts]
        if not pts:
            return 0.0
        v = np.asarray(pts)
        d2 = np.sum((v[:, None, :] - v[None, :, :]) ** 2, axis=-1)
        return float(math.sqrt(np.max(d2)))


def region_hits_segments(region: Window, segs: np.ndarray) -> bool:
    """True when the curve given by ``segs`` meets the closed region."""
    if len(segs) == 0:
        return False
    if region.kind == "disk":
        inside = np.hypot(segs[:, 0] - region.center[0], segs[:, 1] - region.center[1])
        if np.any(inside <= region.radius):
            return True
        return K.point_segs_dist(region.center[0], region.center[1], segs) <= region.radius
    for p in segs[:, :2]:
        if region.contains(p):
            return True
    return K.segs_min_dist(segs, region.boundary_segments()) <= EPS_GEOM


def contours_overlap(a: Contour, b: Contour, interiors: bool = False) -> bool:
    """Curve contact, or interior overlap when ``interiors`` is set."""
    touching = K.segs_min_dist(a.segments(), b.segments()) <= EPS_GEOM
    if touching or not interiors:
        return touching
    return a.contains_point(b.verts[0]) or b.contains_point(a.verts[0])


def birth_filter(spec: FieldSpec) -> Callable[[Contour], bool]:
    def accept(contour: Contour) -> bool:
        if spec.forbidden is not None and region_hits_segments(spec.forbidden, contour.segments()):
            return False
        if spec.cutoff is not None and contour.diameter > spec.cutoff.alpha:
            if region_hits_segments(spec.cutoff.region, contour.segments()):
                return False
        return True

    return accept


@dataclass
class FreeProcessResult:
    instances: List[TimeSpaceInstance]
    t0: float
    t1: float
    diagnostics: dict


def run_free_process(
    spec: FieldSpec,
    time_span,
    rng,
    batch: int = 8,
    calibration: int = 192,
    max_retries: int = 200,
) -> FreeProcessResult:
    """Free birth-and-death trajectory over ``time_span = (t0, t1)``.

    Births are a Poisson process in time at the estimated restricted contour
    mass; marks come from weight-proportional resampling inside proposal
    batches; lifetimes are Exp(1).
    """
    t0, t1 = float(time_span[0]), float(time_span[1])
    if not t1 > t0:
        raise ValueError("empty time span")
    accept = birth_filter(spec)
    tilt = spec.birth_tilt

    def draw_candidates():
        cands = contour_opportunities(tilt, spec.window, spec.window, rng)
        return [c for c in cands if accept(c.contour)]

    totals = np.zeros(calibration)
    pool = []
    for i in range(calibration):
        cs = draw_candidates()
        totals[i] = sum(c.weight for c in cs)
        if cs:
            pool.append(cs)
    mass = float(totals.mean())
    mass_se = float(totals.std(ddof=1) / math.sqrt(calibration))
    diagnostics = {
        "mass": mass,
        "mass_stderr": mass_se,
        "starvation_retries": 0,
        "batch_ess": [],
        "n_births": 0,
    }
    if mass <= 0.0:
        return FreeProcessResult([], t0, t1, diagnostics)
    n_birth = rng.poisson(mass * (t1 - t0))
    times = np.sort(rng.uniform(t0, t1, size=n_birth))
    instances = []
    for idx, s0 in enumerate(times):
        cands = []
        for attempt in range(max_retries):
            for _ in range(batch):
                cands.extend(draw_candidates())
            if cands:
                break
            diagnostics["starvation_retries"] += 1
        if not cands:
            raise RuntimeError("proposal starvation: no birth candidate found")
        w = np.array([c.weight for c in cands])
        diagnostics["batch_ess"].append(float(w.sum() ** 2 / np.dot(w, w)))
        pick = cands[int(rng.choice(len(cands), p=w / w.sum()))]
        instances.append(
            TimeSpaceInstance(pick.contour, float(s0), float(s0 + rng.exponential(1.0)), index=idx)
        )
    diagnostics["n_births"] = len(instances)
    return FreeProcessResult(instances, t0, t1, diagnostics)


def delta_magnetisation(contour: Contour, alive: Sequence[Contour], region: Window) -> float:
    """Exact change of the region magnetisation when ``contour`` is added.

    Adding a contour disjoint from the configuration flips the colour of its
    interior, so the change is ``-2 * M_{region ∩ Int}(alive)``.
    """
    from .observables import magnetisation_inside_polygon

    return -2.0 * magnetisation_inside_polygon(alive, contour, region)


def resolve_acceptance(
    instances: Sequence[TimeSpaceInstance],
    spec: FieldSpec,
    rng,
) -> List[TimeSpaceInstance]:
    """Recursive trimming; marks ``accepted`` on every instance.

    Exclusion is by curve contact with an accepted instance alive at birth
    (also under an area field, whose extra Bernoulli factor is applied
    afterwards); returns the accepted instances.
    """
    order = sorted(instances, key=lambda i: i.birth)
    accepted: List[TimeSpaceInstance] = []
    area = spec.area_field
    clamped = 0
    for inst in order:
        alive = [a for a in accepted if a.alive_at(inst.birth)]
        clash = any(contours_overlap(inst.contour, a.contour) for a in alive)
        ok = not clash
        if ok and area is not None:
            dm = delta_magnetisation(inst.contour, [a.contour for a in alive], area.region)
            logp = -0.5 * spec.beta * inst.contour.length + area.h * dm
            if logp > 0:
                small = spec.cutoff is None or inst.contour.diameter <= spec.cutoff.alpha
                if small and logp > 1e-9:
                    raise AssertionError(
                        "area-field acceptance probability above 1 for a small contour"
                    )
                clamped += 1
                logp = 0.0
            ok = rng.uniform() < math.exp(logp)
        inst.accepted = ok
        if ok:
            accepted.append(inst)
    if clamped:
        import warnings

        warnings.warn(f"{clamped} area-field acceptance probabilities clamped to 1", stacklevel=2)
    return accepted


def ancestor_links(
    instances: Sequence[TimeSpaceInstance], interiors: bool = False
) -> dict:
    """Directed ancestry, instance index -> indices that may affect it."""
    order = sorted(instances, key=lambda i: i.birth)
    links = {inst.index: [] for inst in order}
    for i, inst in enumerate(order):
        for other in order[: i + 1]:
            if other is inst or other.birth > inst.birth or other.death <= inst.birth:
                continue
            if contours_overlap(inst.contour, other.contour, interiors):
                links[inst.index].append(other.index)
    return links


def ancestor_clan(
    instances: Sequence[TimeSpaceInstance],
    target: Window,
    s: float,
    interiors: bool = False,
    cap: int = 100000,
) -> Clan:
    """Union of ancestor clans of instances alive at ``s`` meeting ``target``."""
    by_index = {inst.index: inst for inst in instances}
    roots = [
        inst
        for inst in instances
        if inst.alive_at(s) and region_hits_segments(target, inst.contour.segments())
    ]
    links = None
    seen = set()
    frontier = [r.index for r in roots]
    members = []
    while frontier:
        idx = frontier.pop()
        if idx in seen:
            continue
        seen.add(idx)
        members.append(by_index[idx])
        if len(members) > cap:
            raise RuntimeError("ancestor clan exceeds cap")
        if links is None:
            links = ancestor_links(instances, interiors)
        frontier.extend(links[idx])
    return Clan(tuple(sorted(members, key=lambda m: m.birth)), root=f"target@{s:g}")


@dataclass
class FieldSample:
    configuration: PolygonalConfiguration
    instances: List[TimeSpaceInstance]
    accepted: List[TimeSpaceInstance]
    diagnostics: dict


def sample_field(
    spec: FieldSpec,
    rng,
    horizon: float = 20.0,
    guard: float = 5.0,
    batch: int = 8,
    calibration: int = 192,
    check_horizon: bool = True,
) -> FieldSample:
    """One approximate draw of the interacting field at time 0.

    Runs the free process on ``[-horizon, 0]``, trims, and returns the
    accepted configuration alive at time 0.  When the ancestry of the output
    reaches into the first ``guard`` lifetimes of the window the horizon was
    too short and an error instructs to enlarge it.
    """
    free = run_free_process(spec, (-horizon, 0.0), rng, batch=batch, calibration=calibration)
    accepted = resolve_acceptance(free.instances, spec, rng)
    at_zero = [a for a in accepted if a.alive_at(0.0)]
    diag = dict(free.diagnostics)
    if check_horizon and at_zero:
        clan = ancestor_clan(free.instances, spec.window, 0.0, interiors=spec.area_field is not None)
        earliest = min((m.birth for m in clan.members), default=0.0)
        diag["clan_earliest_birth"] = earliest
        diag["clan_size_at_zero"] = len(clan)
        if earliest < -horizon + guard:
            raise HorizonTooShort(
                f"ancestry reaches {earliest:.2f}, within {guard} of the window "
                f"start -{horizon}; rerun with a larger horizon"
            )
    config = PolygonalConfiguration([a.contour for a in at_zero])
    return FieldSample(config, free.instances, accepted, diag)


@dataclass
class MagnetisationEstimate:
    value: float
    stderr: float
    beta: float
    L: float
    margin: float
    replicas: int
    per_replica: list


def estimate_spontaneous_magnetisation(
    beta: float,
    L: float,
    replicas: int,
    rng,
    margin: float = 5.0,
    horizon: float = 20.0,
) -> MagnetisationEstimate:
    """Per-area magnetisation over an interior disk, averaged over fields.

    The interior margin keeps the boundary-layer bias of the finite window
    out of the estimate; the value lies in (-1, 0).
    """
    if replicas <= 0:
        raise ValueError("replicas must be positive")
    if margin <= 0 or margin >= L:
        raise ValueError("margin must fall inside (0, L)")
    from .observables import magnetisation

    inner = Window.disk(L - margin)
    spec = FieldSpec(beta=beta, window=Window.disk(L))
    vals = []
    for _ in range(replicas):
        sample = sample_field(spec, rng, horizon=horizon)
        vals.append(magnetisation(sample.configuration, inner) / inner.area())
    v = np.asarray(vals)
    se = float(v.std(ddof=1) / math.sqrt(replicas)) if replicas > 1 else math.inf
    return MagnetisationEstimate(float(v.mean()), se, beta, L, margin, replicas, vals)
