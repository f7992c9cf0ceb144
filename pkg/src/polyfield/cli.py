"""Command line interface.

Subcommands mirror the experiment kinds plus analysis and rendering:

    polyfield run-arak         --config cfg.yaml | --radius R --replicas N --seed S --out f.jsonl
    polyfield run-gibbs        --config cfg.yaml | --beta B --radius L ... --out f.jsonl
    polyfield estimate-tension --beta B --delta D --lambdas 6,9,12 --replicas N --seed S --out t.csv
    polyfield wulff            --config cfg.yaml [--seed S] [--out f.jsonl]
    polyfield analyze          --in f.jsonl --alpha A --delta D --L L --out report.csv
    polyfield render           --in f.jsonl --replica 0 --radius R --out pic.svg

Flags override config-file values; every record embeds the config hash and
seed for replay.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .geometry import Contour, PolygonalConfiguration, Window
from .harness import (
    ExperimentConfig,
    analyze_records,
    read_jsonl,
    run_arak_experiment,
    run_gibbs_experiment,
    run_tension_experiment,
    run_wulff_experiment,
    write_csv,
    write_jsonl,
)
from .serialize import render_svg


def _load_config(args, kind: str) -> ExperimentConfig:
    if getattr(args, "config", None):
        config = ExperimentConfig.from_yaml(args.config)
        if config.kind != kind:
            raise SystemExit(f"config kind {config.kind!r} does not match subcommand {kind!r}")
    else:
        config = ExperimentConfig(kind=kind, seed=0)
    overrides = {
        "seed": "seed",
        "radius": "L",
        "beta": "beta",
        "replicas": "replicas",
        "horizon": "horizon",
        "alpha": "alpha",
        "delta": "delta",
        "a": "a",
        "budget": "budget",
        "margin": "margin",
        "tension_delta": "tension_delta",
        "mode": "tension_mode",
    }
    for arg_name, field in overrides.items():
        val = getattr(args, arg_name, None)
        if val is not None:
            setattr(config, field, val)
    if getattr(args, "lambdas", None):
        config.lambdas = [float(v) for v in args.lambdas.split(",")]
    if getattr(args, "cutoff", None) is not None:
        region = args.cutoff_region or {"kind": "disk", "center": [0, 0], "radius": config.L}
        config.cutoff = {"alpha": args.cutoff, "region": region}
    if getattr(args, "forbid", None):
        config.forbidden = json.loads(args.forbid)
    if getattr(args, "field", None) is not None:
        region = args.field_region or {"kind": "disk", "center": [0, 0], "radius": config.L}
        config.area_field = {"h": args.field, "region": region}
    if getattr(args, "out", None):
        config.jsonl = args.out
    return config


def _common_flags(sp, with_field=False):
    sp.add_argument("--config", help="YAML config file")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--replicas", type=int)
    sp.add_argument("--out", help="output path")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="polyfield", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("run-arak", help="exact free-boundary field draws")
    _common_flags(sp)
    sp.add_argument("--radius", type=float)

    sp = sub.add_parser("run-gibbs", help="length-interacting field draws")
    _common_flags(sp)
    sp.add_argument("--beta", type=float)
    sp.add_argument("--radius", type=float)
    sp.add_argument("--horizon", type=float)
    sp.add_argument("--cutoff", type=float, help="cutoff diameter threshold")
    sp.add_argument("--cutoff-region", dest="cutoff_region", type=json.loads)
    sp.add_argument("--forbid", help="forbidden region as JSON")
    sp.add_argument("--field", type=float, help="area-field strength h")
    sp.add_argument("--field-region", dest="field_region", type=json.loads)

    sp = sub.add_parser("estimate-tension", help="connection/tension estimates")
    _common_flags(sp)
    sp.add_argument("--beta", type=float)
    sp.add_argument("--tension-delta", dest="tension_delta", type=float)
    sp.add_argument("--lambdas", help="comma separated separations")
    sp.add_argument("--mode", choices=["finite", "infinite", "paired"])

    sp = sub.add_parser("wulff", help="droplet conditioning experiment")
    _common_flags(sp)
    sp.add_argument("--beta", type=float)
    sp.add_argument("--radius", type=float)
    sp.add_argument("--a", type=float)
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--budget", type=int)
    sp.add_argument("--margin", type=float)

    sp = sub.add_parser("analyze", help="observable table from stored records")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--delta", type=float, required=True)
    sp.add_argument("--L", type=float, required=True)
    sp.add_argument("--out", required=True)

    sp = sub.add_parser("render", help="render one stored configuration to SVG")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--replica", type=int, default=0)
    sp.add_argument("--radius", type=float, required=True)
    sp.add_argument("--out", required=True)

    args = parser.parse_args(argv)

    if args.command == "run-arak":
        config = _load_config(args, "arak")
        records = run_arak_experiment(config)
        write_jsonl(records, config.jsonl or "arak.jsonl")
        print(f"wrote {len(records)} records to {config.jsonl or 'arak.jsonl'}")
    elif args.command == "run-gibbs":
        config = _load_config(args, "gibbs")
        records = run_gibbs_experiment(config)
        write_jsonl(records, config.jsonl or "gibbs.jsonl")
        print(f"wrote {len(records)} records to {config.jsonl or 'gibbs.jsonl'}")
    elif args.command == "estimate-tension":
        config = _load_config(args, "tension")
        records = run_tension_experiment(config)
        rows = [r for r in records if "T_hat" in r]
        out = config.jsonl or "tension.csv"
        write_csv(
            [{k: r[k] for k in ("lambda", "mode", "T_hat", "stderr", "tau_lambda", "replicas")}
             for r in rows],
            out,
        )
        fit = records[-1]["fit"]
        print(f"wrote {len(rows)} rows to {out}; tau_inf={fit['tau_infinity']:.4f} c={fit['c']:.3f}")
    elif args.command == "wulff":
        config = _load_config(args, "wulff")
        reports, summary = run_wulff_experiment(config)
        out = config.jsonl or "wulff.jsonl"
        write_jsonl([r.to_record() for r in reports] + [{"summary": summary}], out)
        print(json.dumps(summary, indent=2, sort_keys=True))
    elif args.command == "analyze":
        records = read_jsonl(args.infile)
        rows = analyze_records(records, args.alpha, args.delta, args.L)
        write_csv(rows, args.out)
        print(f"wrote {len(rows)} rows to {args.out}")
    elif args.command == "render":
        records = read_jsonl(args.infile)
        rec = records[args.replica]
        snap = rec["config_snapshot"]
        config = PolygonalConfiguration(
            [Contour(v) for v in snap["contours"]],
            [np.asarray(a) for a in snap["arcs"]],
        )
        svg = render_svg(config, Window.disk(args.radius))
        with open(args.out, "w") as fh:
            fh.write(svg)
        print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
