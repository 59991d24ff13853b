"""Command-line entry point for the capacity sweeps."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .harness import (
    ExperimentConfig,
    SweepPoint,
    emit_csv,
    load_config,
    run_fig1_sweep,
    run_fig2_sweep,
    run_single,
    summarize,
)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="YAML config file (see README for the schema)")
    parser.add_argument("--seed", type=int, help="master seed override")
    parser.add_argument("--out", default="results.csv", help="output CSV path")
    parser.add_argument("--drops", type=int, help="number of UE drops override")
    parser.add_argument("--realizations", type=int, help="realizations per drop override")


def _config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    config = load_config(args.config) if args.config else ExperimentConfig()
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.drops is not None:
        overrides["n_drops"] = args.drops
    if args.realizations is not None:
        overrides["n_realizations"] = args.realizations
    return replace(config, **overrides) if overrides else config


def _print_summary(rows) -> None:
    for (strategy, bandwidth, alpha), cap in sorted(summarize(rows).items()):
        print(
            f"strategy={strategy:<18} B={bandwidth / 1e6:7.2f} MHz "
            f"alpha={alpha:6.1f} dB  mean capacity={cap / 1e6:10.4f} Mbit/s"
        )


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="ncrsim",
        description="Capacity sweeps for a repeater-assisted SISO-OFDM uplink",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p1 = sub.add_parser("fig1", help="capacity versus bandwidth sweep")
    _add_common(p1)

    p2 = sub.add_parser("fig2", help="capacity versus amplification sweep")
    _add_common(p2)

    ps = sub.add_parser("single", help="one capacity evaluation")
    _add_common(ps)
    ps.add_argument("--drop", type=int, default=0)
    ps.add_argument("--realization", type=int, default=0)
    ps.add_argument("--strategy", default="all")
    ps.add_argument("--bandwidth", type=float, default=15e6, help="bandwidth in Hz")
    ps.add_argument("--alpha-db", type=float, default=None)

    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        if args.command == "fig1":
            rows = run_fig1_sweep(config)
        elif args.command == "fig2":
            rows = run_fig2_sweep(config)
        else:
            alpha_db = args.alpha_db if args.alpha_db is not None else config.alpha_db
            s = int(round(args.bandwidth / config.subcarrier_spacing_hz))
            point = SweepPoint(
                experiment="single",
                index=0,
                bandwidth_hz=args.bandwidth,
                num_subcarriers=s,
                alpha_db=alpha_db,
            )
            strategy = config.strategy(args.strategy, alpha_db=alpha_db)
            rows = [run_single(config, args.drop, args.realization, strategy, point)]
        emit_csv(rows, args.out)
        _print_summary(rows)
        print(f"wrote {len(rows)} rows to {args.out}")
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
