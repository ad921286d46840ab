"""Command-line entry point: ``bridgeworld simulate`` and ``bridgeworld experiment``.

Exit status is 0 on success, 1 on a validation error and 2 on an I/O error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from .config import ConfigIOError, parse_config
from .experiment import ALL_CONDITIONS, Condition, run_condition, run_suite
from .reporting import render_svg, write_summary_csv, write_telemetry_csv
from .rng import MASK64

log = logging.getLogger("bridgeworld")

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _seed(text: str) -> int:
    value = int(text, 10)
    if not 0 <= value <= MASK64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _conditions(text: str) -> list[Condition]:
    if text.strip().lower() == "all":
        return list(ALL_CONDITIONS)
    return [Condition.parse(t) for t in text.split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bridgeworld", description="BridgeWorld virtuous-agent simulator")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--iterations", type=_positive, default=1000)
        sp.add_argument("--population", type=int, default=None,
                        help="agents per run (default: config value, 100)")
        sp.add_argument("--seed", type=_seed, default=0)
        sp.add_argument("--config", help="flat JSON file of config fields")
        sp.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                        help="override one config field; repeatable")
        sp.add_argument("--out", required=True)

    sim = sub.add_parser("simulate", help="one run, per-iteration telemetry CSV")
    sim.add_argument("--condition", type=Condition.parse, required=True,
                     help="nl, s, s+e, pb, pb+e, ss or ss+e")
    common(sim)
    sim.add_argument("--svg", help="also write a trend chart")

    exp = sub.add_parser("experiment", help="repeated runs, summary CSV")
    exp.add_argument("--conditions", type=_conditions, default=list(ALL_CONDITIONS),
                     help="'all' or a comma-separated list")
    exp.add_argument("--repeats", type=_positive, default=10)
    exp.add_argument("--workers", type=_positive, default=1)
    common(exp)
    return p


def _run(args) -> None:
    base = parse_config(args.config, args.overrides)
    population = args.population if args.population is not None else base.population
    if args.command == "simulate":
        # validate the full condition config before running
        args.condition.configure(base).replace(population=population)
        rows = run_condition(args.condition, args.iterations, population, args.seed, base)
        write_telemetry_csv(rows, args.out)
        if args.svg:
            render_svg(rows, args.svg, title=f"{args.condition.label} seed {args.seed}")
        log.info("wrote %d rows to %s", len(rows), args.out)
    else:
        for c in args.conditions:
            c.configure(base).replace(population=population)
        summaries = run_suite(args.conditions, args.repeats, args.iterations, population,
                              args.seed, base, workers=args.workers)
        write_summary_csv(summaries, args.out)
        for s in summaries:
            log.info("%s mean=%.3f sd=%s", s.condition.label, s.mean_death_rate, s.sd_death_rate)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"bridgeworld: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        _run(args)
    except (ConfigIOError, OSError) as exc:
        print(f"bridgeworld: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"bridgeworld: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
