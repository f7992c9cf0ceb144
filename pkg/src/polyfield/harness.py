"""Experiment orchestration: configs, seeded replicas, records, persistence.

A config is one YAML document (key-value with nested tables).  Every output
record embeds the build id, the config hash and the seed; re-running with
the same config and seed reproduces records exactly.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import subprocess
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

import numpy as np
import yaml

from . import __version__
from . import rngstreams as rs
from .arak import run_arak
from .geometry import Contour, PolygonalConfiguration, Window
from .gibbs import AreaField, Cutoff, FieldSpec, estimate_spontaneous_magnetisation, sample_field
from .observables import WulffReport, check_no_boundary_large, magnetisation, wulff_report
from .serialize import config_to_dict, dump_jsonl_record, render_svg
from .tension import estimate_T, fit_tension_curve


class ConfigError(ValueError):
    pass


def default_alpha(L: float) -> float:
    return math.sqrt(L) * math.log(L)


def default_delta(L: float) -> float:
    return math.log(L) ** 2


@dataclass
class ExperimentConfig:
    kind: str
    seed: int
    beta: float = 5.0
    L: float = 10.0
    margin: float = 5.0
    replicas: int = 10
    horizon: float = 20.0
    alpha: Optional[float] = None
    delta: Optional[float] = None
    a: Optional[float] = None
    cutoff: Optional[dict] = None
    forbidden: Optional[dict] = None
    area_field: Optional[dict] = None
    lambdas: Optional[list] = None
    tension_delta: float = 1.0
    tension_mode: str = "paired"
    budget: int = 1000
    min_accepted: int = 50
    m_replicas: int = 24
    jsonl: Optional[str] = None
    csv: Optional[str] = None
    svg: Optional[str] = None

    KINDS = ("arak", "gibbs", "tension", "wulff")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ConfigError(f"kind must be one of {self.KINDS}, got {self.kind!r}")
        if self.alpha is None:
            self.alpha = default_alpha(self.L)
        if self.delta is None:
            self.delta = default_delta(self.L)

    @staticmethod
    def from_dict(d: dict) -> "ExperimentConfig":
        known = {f for f in ExperimentConfig.__dataclass_fields__}
        flat = {}
        for section in ("field", "schedule", "tension", "output"):
            sub = d.pop(section, None) or {}
            if not isinstance(sub, dict):
                raise ConfigError(f"section {section!r} must be a table")
            flat.update(sub)
        flat.update(d)
        renames = {"radius": "L", "delta_ball": "tension_delta", "mode": "tension_mode"}
        flat = {renames.get(k, k): v for k, v in flat.items()}
        unknown = set(flat) - known
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        missing = [k for k in ("kind", "seed") if k not in flat]
        if missing:
            raise ConfigError(f"missing required config fields: {missing}")
        return ExperimentConfig(**flat)

    @staticmethod
    def from_yaml(path) -> "ExperimentConfig":
        with open(path) as fh:
            doc = yaml.safe_load(fh)
        if not isinstance(doc, dict):
            raise ConfigError("config document must be a mapping")
        return ExperimentConfig.from_dict(doc)

    def canonical(self) -> dict:
        d = {k: getattr(self, k) for k in self.__dataclass_fields__}
        return json.loads(json.dumps(d, sort_keys=True))

    def config_hash(self) -> str:
        return hashlib.sha256(
            json.dumps(self.canonical(), sort_keys=True).encode()
        ).hexdigest()[:16]

    def field_spec(self, window: Optional[Window] = None) -> FieldSpec:
        window = window or Window.disk(self.L)
        cut = None
        if self.cutoff:
            cut = Cutoff(self.cutoff["alpha"], Window.from_dict(self.cutoff["region"]))
        forb = Window.from_dict(self.forbidden) if self.forbidden else None
        af = None
        if self.area_field:
            af = AreaField(self.area_field["h"], Window.from_dict(self.area_field["region"]))
        return FieldSpec(self.beta, window, cut, forb, af)


def build_id() -> str:
    try:
        out = subprocess.run(
            ["git", "describe", "--always", "--dirty"],
            capture_output=True, text=True, timeout=5, cwd=Path(__file__).parent,
        )
        if out.returncode == 0:
            return out.stdout.strip()
    except Exception:
        pass
    return f"polyfield-{__version__}"


def _base_record(config: ExperimentConfig, replica: int) -> dict:
    return {
        "build": build_id(),
        "config_hash": config.config_hash(),
        "seed": config.seed,
        "replica": replica,
    }


def run_arak_experiment(config: ExperimentConfig) -> List[dict]:
    records = []
    window = Window.disk(config.L)
    for i in range(config.replicas):
        rng = rs.stream(config.seed, rs.SUB_ARAK, i)
        t0 = time.perf_counter()
        out = run_arak(window, rng)
        rec = _base_record(config, i)
        rec.update(
            config_snapshot=config_to_dict(out.configuration),
            n_interior_births=out.n_interior_births,
            n_boundary_births=out.n_boundary_births,
            n_collisions=out.n_collisions,
            n_jumps=out.n_jumps,
            flagged_multi_collision=out.flagged_multi_collision,
            wall_clock=time.perf_counter() - t0,
        )
        records.append(rec)
    return records


def run_gibbs_experiment(config: ExperimentConfig) -> List[dict]:
    records = []
    spec = config.field_spec()
    for i in range(config.replicas):
        rng = rs.stream(config.seed, rs.SUB_ENV, i)
        t0 = time.perf_counter()
        sample = sample_field(spec, rng, horizon=config.horizon)
        rec = _base_record(config, i)
        rec.update(
            spec=spec.to_dict(),
            config_snapshot=config_to_dict(sample.configuration),
            diagnostics={
                k: v for k, v in sample.diagnostics.items() if k != "batch_ess"
            },
            batch_ess_mean=(
                float(np.mean(sample.diagnostics["batch_ess"]))
                if sample.diagnostics.get("batch_ess")
                else None
            ),
            wall_clock=time.perf_counter() - t0,
        )
        records.append(rec)
    return records


def run_tension_experiment(config: ExperimentConfig) -> List[dict]:
    if not config.lambdas:
        raise ConfigError("tension experiment needs 'lambdas'")
    env_spec = None
    if config.beta is not None:
        lam_max = max(config.lambdas)
        env_window = Window.disk(lam_max / 2.0 + config.tension_delta + config.margin,
                                 (lam_max / 2.0, 0.0))
        env_spec = FieldSpec(config.beta, env_window)
    records = []
    estimates = []
    for j, lam in enumerate(sorted(config.lambdas)):
        rng = rs.stream(config.seed, rs.SUB_WALKS, j)
        pair = estimate_T(
            (0.0, 0.0), (lam, 0.0), config.tension_delta, config.beta, env_spec,
            config.replicas, rng, mode="paired",
        )
        fin, inf_ = pair
        use = fin if config.tension_mode == "finite" else inf_
        estimates.append(use)
        for est in pair:
            rec = _base_record(config, j)
            rec.update(est.to_record())
            records.append(rec)
    fit = fit_tension_curve(estimates)
    rec = _base_record(config, -1)
    rec.update({"fit": fit})
    records.append(rec)
    return records


def run_wulff_experiment(config: ExperimentConfig):
    """Tilt-then-reject droplet conditioning.

    Estimates the spontaneous magnetisation, applies an area tilt
    ``h = min(a, beta/(pi*alpha))`` on the observation disk, then rejects
    samples violating the excess-magnetisation constraint or the
    boundary-clearance event.  Accepted samples are exact draws of the
    tilted cut-off field conditioned on both filters; the tilt used is part
    of the summary.
    """
    L = config.L
    alpha = config.alpha
    if 6.0 * alpha >= L:
        raise ConfigError(
            f"alpha={alpha:.3g} too large for the boundary event (need 6*alpha < L); "
            "set schedule.alpha explicitly"
        )
    rng_m = rs.stream(config.seed, rs.SUB_HARNESS, 0)
    m_hat = estimate_spontaneous_magnetisation(
        config.beta, L, config.m_replicas, rng_m, margin=config.margin,
        horizon=config.horizon,
    )
    a = config.a
    if a is None:
        a = 0.3 * 2.0 * math.pi * abs(m_hat.value)
    if not 0.0 < a < 2.0 * math.pi * abs(m_hat.value):
        raise ConfigError("excess density a outside (0, 2*pi*|M|)")
    target = m_hat.value * math.pi * L**2 + a * L**2
    h_bound = config.beta / (math.pi * alpha)
    h = min(a, h_bound)
    window = Window.disk(L + config.margin)
    observe = Window.disk(L)
    spec = FieldSpec(
        config.beta,
        window,
        cutoff=Cutoff(alpha, observe),
        area_field=AreaField(h, observe),
    )
    reports: List[WulffReport] = []
    accepted = 0
    tried = 0
    t_start = time.perf_counter()
    for i in range(config.budget):
        tried += 1
        rng = rs.stream(config.seed, rs.SUB_ENV, i)
        sample = sample_field(spec, rng, horizon=config.horizon)
        cfg = sample.configuration
        m_l = magnetisation(cfg, observe)
        if m_l < target:
            continue
        if not check_no_boundary_large(cfg, alpha, L):
            continue
        accepted += 1
        reports.append(wulff_report(cfg, a, m_hat.value, L))
        if accepted >= config.min_accepted:
            break
    summary = {
        "m_hat": m_hat.value,
        "m_hat_stderr": m_hat.stderr,
        "a": a,
        "tilt_h": h,
        "tilt_bound": h_bound,
        "target_magnetisation": target,
        "proposals": tried,
        "accepted": accepted,
        "acceptance_rate": accepted / tried if tried else 0.0,
        "wall_clock": time.perf_counter() - t_start,
    }
    return reports, summary


def write_jsonl(records: List[dict], path) -> None:
    with open(path, "w") as fh:
        for rec in records:
            fh.write(dump_jsonl_record(rec) + "\n")


def read_jsonl(path) -> List[dict]:
    with open(path) as fh:
        return [json.loads(line) for line in fh if line.strip()]


def analyze_records(records: List[dict], alpha: float, delta: float, L: float) -> List[dict]:
    """Observable table for stored configuration records."""
    from .observables import large_contours
    from .skeleton import extract_skeleton, isoperimetric_check

    rows = []
    for rec in records:
        snap = rec.get("config_snapshot")
        if snap is None:
            continue
        config = PolygonalConfiguration(
            [Contour(v) for v in snap["contours"]],
            [np.asarray(a) for a in snap["arcs"]],
        )
        m = magnetisation(config, Window.disk(L))
        larges, total_len = large_contours(config, alpha, L)
        row = {
            "replica": rec.get("replica"),
            "magnetisation": m,
            "n_large": len(larges),
            "total_large_length": total_len,
            "skeleton_length": 0.0,
            "slack": math.nan,
            "hausdorff": math.nan,
        }
        if larges:
            sk = extract_skeleton(larges, alpha, delta, L)
            iso = isoperimetric_check(sk, larges)
            row["skeleton_length"] = sk.length
            row["slack"] = iso.slack
        rows.append(row)
    return rows


def write_csv(rows: List[dict], path) -> None:
    if not rows:
        Path(path).write_text("")
        return
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)


def replay(config_path, seed: Optional[int] = None) -> List[dict]:
    """Deterministic re-run of a stored config; optional seed override."""
    config = ExperimentConfig.from_yaml(config_path)
    if seed is not None:
        config.seed = seed
    runner = {
        "arak": run_arak_experiment,
        "gibbs": run_gibbs_experiment,
        "tension": run_tension_experiment,
    }
    if config.kind == "wulff":
        reports, summary = run_wulff_experiment(config)
        recs = [dict(_base_record(config, i), **r.to_record()) for i, r in enumerate(reports)]
        recs.append(dict(_base_record(config, -1), summary=summary))
        return recs
    return runner[config.kind](config)


def emit_svg(config_snapshot: PolygonalConfiguration, window: Window) -> str:
    return render_svg(config_snapshot, window)
