"""Command line entry point: ``coevopd run | perturb | census``."""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

from .config import ConfigError, RunConfig, parse_config
from .game import GameParams, Strategy
from .io import SnapshotFormatError, read_snapshot, snapshot_to_lattice
from .runner import run_replicates
from .scenarios import FromSnapshot, Mutation, ScenarioSpec, neighborhood_census


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="TOML run configuration")
    p.add_argument("--side", type=int)
    p.add_argument("--steps", type=int, dest="n_steps")
    p.add_argument("--b", type=float)
    p.add_argument("--l", type=float)
    p.add_argument("--delta-step", type=float)
    p.add_argument("--delta-max", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--replicates", type=int, dest="n_replicates")
    p.add_argument("--record-every", type=int)
    p.add_argument("--snapshot-steps", type=lambda s: tuple(int(v) for v in s.split(",") if v))
    p.add_argument("--stop-on-absorption", action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--out", dest="out_dir")
    p.add_argument("--workers", type=int, default=1)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coevopd", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run replicates from a config file and/or flags")
    _add_run_flags(run)

    perturb = sub.add_parser("perturb", help="load a snapshot, perturb it and keep running")
    perturb.add_argument("snapshot", type=Path)
    perturb.add_argument("--from", dest="from_", type=Strategy.parse)
    perturb.add_argument("--to", type=Strategy.parse)
    group = perturb.add_mutually_exclusive_group()
    group.add_argument("--rate", type=float, help="fraction of --from agents that mutate")
    group.add_argument(
        "--keep-one", nargs="?", const="random", metavar="ROW,COL",
        help="mutate all but one agent, optionally kept at ROW,COL",
    )
    perturb.add_argument("--reset-weights", action="store_true")
    _add_run_flags(perturb)

    census = sub.add_parser("census", help="neighbourhood census of one agent in a snapshot")
    census.add_argument("snapshot", type=Path)
    census.add_argument("--row", type=int, required=True)
    census.add_argument("--col", type=int, required=True)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    config = parse_config(args.config.read_text()) if args.config else RunConfig()
    params = {
        k: getattr(args, k) for k in ("b", "l", "delta_step", "delta_max") if getattr(args, k) is not None
    }
    if params:
        try:
            config = replace(config, params=replace(config.params, **params))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    overrides = {
        k: getattr(args, k)
        for k in ("side", "n_steps", "seed", "n_replicates", "record_every", "snapshot_steps", "out_dir")
        if getattr(args, k) is not None
    }
    if args.stop_on_absorption is not None:
        overrides["early_stop_on_absorption"] = args.stop_on_absorption
    return replace(config, **overrides)


def _perturb_scenario(args: argparse.Namespace) -> ScenarioSpec:
    mutation = None
    if args.from_ is not None or args.to is not None:
        if args.from_ is None or args.to is None:
            raise ConfigError("--from and --to must be given together")
        keep_count, keep_at, rate = None, None, 1.0
        if args.keep_one is not None:
            keep_count = 1
            if args.keep_one != "random":
                try:
                    row, col = (int(v) for v in args.keep_one.split(","))
                except ValueError:
                    raise ConfigError(f"--keep-one expects ROW,COL, got {args.keep_one!r}") from None
                keep_at = (row, col)
        elif args.rate is not None:
            rate = args.rate
        try:
            mutation = Mutation(args.from_, args.to, rate=rate, keep_count=keep_count, keep_at=keep_at)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    return ScenarioSpec(FromSnapshot(str(args.snapshot)), mutation, args.reset_weights)


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        if args.command == "census":
            lattice = snapshot_to_lattice(read_snapshot(args.snapshot))
            if not (0 <= args.row < lattice.side and 0 <= args.col < lattice.side):
                raise ConfigError(f"({args.row}, {args.col}) is outside a {lattice.side}x{lattice.side} grid")
            c, d, a = neighborhood_census(lattice, lattice.index(args.row, args.col))
            print(f"C={c} D={d} A={a}")
            return 0
        config = _config_from_args(args)
        if args.command == "perturb":
            snap = read_snapshot(args.snapshot)
            config = replace(config, side=snap.side, scenario=_perturb_scenario(args))
        results = run_replicates(config, workers=args.workers)
    except (ConfigError, SnapshotFormatError, ValueError, OSError) as exc:
        print(f"coevopd: error: {exc}", file=sys.stderr)
        return 2
    for r in results:
        print(r.csv_row())
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
