"""Command line: run experiments, verify exactness, compare samplers.

``jumpmc run config.json`` simulates the configured chains and writes
trace/samples/statistics files.  ``jumpmc verify config.json`` enumerates
the configured process and checks stationarity and (skew) balance
exactly.  ``jumpmc compare a.json b.json ...`` repeats each configured
run and tabulates efficiency side by side.

Exit codes: 0 on success, 1 when an exact check fails, 2 for
configuration errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import artifacts, balancing, oracle
from .config import ExperimentConfig, apply_overrides
from .diagnostics import summarize_run
from .errors import ConfigError, SizeCapError, ToolkitError
from .models import build_model
from .samplers import make_rng, make_sampler, run

__all__ = ["main"]


def _load_config(path, overrides) -> ExperimentConfig:
    cfg_path = Path(path)
    if not cfg_path.exists():
        raise ConfigError(f"config file {cfg_path} does not exist")
    try:
        data = json.loads(cfg_path.read_text())
    except json.JSONDecodeError as err:
        raise ConfigError(f"{cfg_path} is not valid JSON: {err}") from None
    data = apply_overrides(data, overrides)
    return ExperimentConfig.from_dict(data)


def _build(cfg: ExperimentConfig):
    target = build_model(cfg.model)
    g = balancing.get(cfg.balancing)
    try:
        sampler = make_sampler(cfg.sampler, target, g, **cfg.sampler_options())
    except ToolkitError as err:
        raise ConfigError(f"sampler/model combination rejected: {err}") from None
    return target, sampler


def _run_chain(cfg: ExperimentConfig, sampler, chain: int):
    rng = make_rng(cfg.seed, chain)
    state = sampler.init_state(rng=None)
    return run(
        sampler,
        state,
        cfg.total_time,
        cfg.thinning,
        rng=rng,
        debug=cfg.debug,
    )


def cmd_run(args) -> int:
    cfg = _load_config(args.config, args.set)
    target, sampler = _build(cfg)
    out_dir = Path(args.output or cfg.output_dir or f"runs/{cfg.run_label()}_seed{cfg.seed}")
    out_dir.mkdir(parents=True, exist_ok=True)

    if cfg.chains == 1:
        results = [_run_chain(cfg, sampler, 0)]
    else:
        with ThreadPoolExecutor(max_workers=cfg.chains) as pool:
            futures = [
                pool.submit(_run_chain, cfg, sampler, chain)
                for chain in range(cfg.chains)
            ]
            results = [f.result() for f in futures]

    chain_stats = []
    for chain, result in enumerate(results):
        chain_dir = out_dir / f"chain_{chain:02d}"
        chain_dir.mkdir(exist_ok=True)
        artifacts.write_trace_csv(chain_dir / "trace.csv", result.trace)
        artifacts.write_samples_csv(
            chain_dir / "samples.csv", result.thinned_times, result.thinned_states, target
        )
        stats = summarize_run(result, burn_in=cfg.burn_in, max_lag=cfg.max_lag)
        artifacts.write_stats_json(chain_dir / "stats.json", stats)
        chain_stats.append(stats)
        print(
            f"chain {chain}: {stats.n_events} events, "
            f"{stats.statistic_name} mean {stats.statistic_mean:.6g}, "
            f"ess {stats.ess:.1f} ({stats.ess_per_second:.1f}/s)"
        )

    summary = {
        "config": cfg.to_dict(),
        "chains": [s.to_dict() for s in chain_stats],
        "statistic_mean": float(np.mean([s.statistic_mean for s in chain_stats])),
        "total_events": int(sum(s.n_events for s in chain_stats)),
    }
    (out_dir / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    print(f"wrote {out_dir}")
    return 0


def cmd_verify(args) -> int:
    cfg = _load_config(args.config, args.set)
    target, sampler = _build(cfg)
    g = balancing.get(cfg.balancing)
    try:
        results = oracle.verify_sampler(
            cfg.sampler,
            target,
            g,
            psi=cfg.psi,
            weights=cfg.weights,
            size_cap=args.size_cap,
            include_compensators=not args.without_compensators,
        )
    except SizeCapError as err:
        raise ConfigError(f"target too large for exact verification: {err}") from None
    for r in results:
        print(r)
    if args.output:
        artifacts.write_report_csv(args.output, results)
        print(f"wrote {args.output}")
    return 0 if all(r.passed for r in results) else 1


def _mean_se(values):
    vals = [v for v in values if v is not None and not (isinstance(v, float) and math.isnan(v))]
    if not vals:
        return math.nan, math.nan
    arr = np.asarray(vals, dtype=float)
    if arr.size == 1:
        return float(arr[0]), 0.0
    return float(arr.mean()), float(arr.std(ddof=1) / math.sqrt(arr.size))


def _fmt(mean, se):
    if math.isnan(mean):
        return "n/a"
    return f"{mean:.4g}+-{se:.2g}"


def cmd_compare(args) -> int:
    if len(args.configs) < 2:
        raise ConfigError("compare needs at least two config files")
    configs = [_load_config(p, args.set) for p in args.configs]
    first_model = configs[0].model
    for cfg in configs[1:]:
        if cfg.model != first_model:
            raise ConfigError(
                "compare requires identical model sections; "
                f"{cfg.run_label()} differs"
            )

    rows = []
    for cfg in configs:
        target, sampler = _build(cfg)
        stats = []
        for rep in range(args.repeats):
            result = _run_chain(cfg, sampler, rep)
            stats.append(summarize_run(result, burn_in=cfg.burn_in, max_lag=cfg.max_lag))
        rows.append(
            {
                "label": cfg.run_label(),
                "sampler": cfg.sampler,
                "balancing": cfg.balancing,
                "repeats": args.repeats,
                "events": _mean_se([s.n_events for s in stats]),
                "stat_mean": _mean_se([s.statistic_mean for s in stats]),
                "ess": _mean_se([s.ess for s in stats]),
                "ess_per_s": _mean_se([s.ess_per_second for s in stats]),
                "excursion": _mean_se([s.mean_excursion_length for s in stats]),
            }
        )

    stat_name = rows and build_model(first_model).statistic_name or "statistic"
    header = ["label", "sampler", "g", "events", f"mean {stat_name}", "ess", "ess/s", "excursion"]
    table = [
        [
            r["label"],
            r["sampler"],
            r["balancing"],
            _fmt(*r["events"]),
            _fmt(*r["stat_mean"]),
            _fmt(*r["ess"]),
            _fmt(*r["ess_per_s"]),
            _fmt(*r["excursion"]),
        ]
        for r in rows
    ]
    widths = [max(len(h), *(len(row[i]) for row in table)) for i, h in enumerate(header)]
    print("  ".join(h.ljust(w) for h, w in zip(header, widths)))
    for row in table:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)))

    if args.output:
        import csv as _csv

        with open(args.output, "w", newline="") as fh:
            writer = _csv.writer(fh)
            writer.writerow(
                ["label", "sampler", "balancing", "repeats"]
                + [f"{k}_{s}" for k in ("events", "stat_mean", "ess", "ess_per_s", "excursion") for s in ("mean", "se")]
            )
            for r in rows:
                writer.writerow(
                    [r["label"], r["sampler"], r["balancing"], r["repeats"]]
                    + [x for k in ("events", "stat_mean", "ess", "ess_per_s", "excursion") for x in r[k]]
                )
        print(f"wrote {args.output}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jumpmc",
        description="Continuous-time jump samplers on discrete move structures",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="simulate the configured chains")
    p_run.add_argument("config", help="JSON experiment config")
    p_run.add_argument("--set", action="append", metavar="PATH=VALUE",
                       help="override a config field (dotted path)")
    p_run.add_argument("--output", help="output directory")
    p_run.set_defaults(func=cmd_run)

    p_verify = sub.add_parser("verify", help="exact checks on an enumerated space")
    p_verify.add_argument("config", help="JSON experiment config")
    p_verify.add_argument("--set", action="append", metavar="PATH=VALUE")
    p_verify.add_argument("--size-cap", type=int, default=200_000,
                          help="largest state space to enumerate")
    p_verify.add_argument("--output", help="write the report CSV here")
    p_verify.add_argument(
        "--without-compensators",
        action="store_true",
        help="negative control: drop the lifted samplers' direction-flip "
        "rates before checking (balance checks should then fail)",
    )
    p_verify.set_defaults(func=cmd_verify)

    p_cmp = sub.add_parser("compare", help="repeat runs and tabulate efficiency")
    p_cmp.add_argument("configs", nargs="+", help="JSON experiment configs")
    p_cmp.add_argument("--set", action="append", metavar="PATH=VALUE")
    p_cmp.add_argument("--repeats", type=int, default=5)
    p_cmp.add_argument("--output", help="write the comparison CSV here")
    p_cmp.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
