"""Command-line benchmark harness (``aoabench``).

Subcommands: ``sweep`` runs one seeded cell and writes its table,
``reproduce`` runs a reference-table preset with a comparison report, and
``single`` prints one run in detail.  A JSON config file given with
``--config`` overrides any flags it names.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

import numpy as np

from .bench import (
    ConfigError,
    ExperimentConfig,
    TABLE_IDS,
    emit_table,
    export_hedge,
    reproduce,
    run_hedge_experiment,
    run_single,
    run_sweep,
)


def _add_experiment_flags(parser, require_seed: bool):
    parser.add_argument(
        "--method",
        default="brute",
        choices=("brute", "em", "sage", "bayes", "bayes-es", "hedge"),
    )
    parser.add_argument("--num-antennas", type=int, default=8)
    parser.add_argument("--num-sources", type=int, default=3)
    parser.add_argument("--noise-variance", type=float, default=1e-6)
    parser.add_argument("--grid-lower", type=float, default=-1.57)
    parser.add_argument("--grid-resolution", type=float, default=0.1)
    parser.add_argument("--grid-count", type=int, default=32)
    parser.add_argument("--max-iterations", type=int, default=1000)
    parser.add_argument("--es-interval", type=int, default=100)
    parser.add_argument("--grad-threshold", type=float, default=0.05)
    parser.add_argument(
        "--threshold-pool",
        type=float,
        nargs="+",
        default=[1.0, 0.5, 0.1, 0.05, 0.01],
        help="expert thresholds for method=hedge",
    )
    parser.add_argument("--gamma", type=float, default=0.25)
    parser.add_argument("--beta", type=float, default=0.5)
    parser.add_argument("--zeta", type=float, default=0.1)
    parser.add_argument(
        "--init", default="good", choices=("good", "random"),
        help="initialization for em/sage",
    )
    parser.add_argument("--runs", type=int, default=50)
    parser.add_argument("--seed", type=int, required=require_seed, default=None)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument(
        "--config", default=None, help="JSON file whose fields override flags"
    )


def _config_from_args(args) -> ExperimentConfig:
    fields = {
        "method": args.method,
        "num_antennas": args.num_antennas,
        "num_sources": args.num_sources,
        "noise_variance": args.noise_variance,
        "grid_lower": args.grid_lower,
        "grid_resolution": args.grid_resolution,
        "grid_count": args.grid_count,
        "max_iterations": args.max_iterations,
        "es_interval": args.es_interval,
        "grad_threshold": args.grad_threshold,
        "threshold_pool": tuple(args.threshold_pool),
        "gamma": args.gamma,
        "beta": args.beta,
        "zeta": args.zeta,
        "init_mode": args.init,
        "runs": args.runs,
        "base_seed": args.seed if args.seed is not None else 0,
        "jobs": args.jobs,
        "output": getattr(args, "output", None),
        "fmt": getattr(args, "format", "csv"),
    }
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            overrides = json.load(fh)
        valid = {f.name for f in dataclasses.fields(ExperimentConfig)}
        for key, value in overrides.items():
            if key not in valid:
                raise ConfigError(f"unknown config field {key!r}")
            fields[key] = tuple(value) if key == "threshold_pool" else value
    return ExperimentConfig(**fields)


def _cmd_sweep(args) -> int:
    config = _config_from_args(args)
    if config.method == "hedge":
        trajectory = run_hedge_experiment(config)
        paths = export_hedge(trajectory, args.out_dir)
        print(f"best threshold: {trajectory.best_threshold}")
        print(f"wrote {paths['csv']} and {paths['json']}")
        return 0
    result = run_sweep(config)
    text = emit_table([result], config.fmt, config.output)
    if config.output:
        print(f"wrote {config.output}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_single(args) -> int:
    config = _config_from_args(args)
    seed = config.base_seed
    record = run_single(config, seed)
    print(f"method:          {config.method}")
    print(f"seed:            {seed}")
    print(f"truth:           {np.round(record.truth, 2).tolist()}")
    print(f"estimate:        {np.round(record.estimate, 2).tolist()}")
    print(f"correct:         {record.correct}")
    print(f"iterations:      {record.iterations}")
    if record.objective_evals:
        print(f"objective evals: {record.objective_evals}")
    if record.gradient_evals:
        print(f"gradient evals:  {record.gradient_evals}")
    return 0


def _cmd_reproduce(args) -> int:
    paths = reproduce(
        args.table,
        runs=args.runs,
        base_seed=args.seed,
        out_dir=args.out_dir,
        jobs=args.jobs,
    )
    for kind, path in paths.items():
        print(f"wrote {kind}: {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aoabench",
        description="Seeded angle-of-arrival estimation benchmarks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="run one sweep cell")
    _add_experiment_flags(sweep, require_seed=True)
    sweep.add_argument("--output", default=None, help="output file path")
    sweep.add_argument("--format", default="csv", choices=("csv", "json"))
    sweep.add_argument(
        "--out-dir", default=".", help="output directory for hedge runs"
    )
    sweep.set_defaults(func=_cmd_sweep)

    single = sub.add_parser("single", help="run and print a single run")
    _add_experiment_flags(single, require_seed=False)
    single.set_defaults(func=_cmd_single)

    rep = sub.add_parser(
        "reproduce", help="run a reference-table preset and diff report"
    )
    rep.add_argument("table", choices=TABLE_IDS)
    rep.add_argument("--runs", type=int, default=50)
    rep.add_argument("--seed", type=int, default=0)
    rep.add_argument("--out-dir", default=".")
    rep.add_argument("--jobs", type=int, default=1)
    rep.set_defaults(func=_cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
