"""Entry point of the ``aerofilter`` command."""

from __future__ import annotations

import argparse
import logging as logging_mod
import sys
from typing import NoReturn, Optional, Sequence

from aerofilter.exceptions.base import AeroFilterError
from aerofilter.filters.intensity import DEFAULT_HISTOGRAM_BINS, LocationMode
from aerofilter.io import CloudFormat
from aerofilter.utils.logging import setup_logging

from . import commands

__all__: list[str] = ["EXIT_OK", "EXIT_USAGE", "EXIT_DATA", "UsageError", "build_parser", "main"]

logger: logging_mod.Logger = logging_mod.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class UsageError(Exception):
    """Raised by the parser instead of exiting, so `main` owns the exit code."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.prog}: {message}")


def _formats() -> list[str]:
    return [str(f) for f in CloudFormat]


def build_parser() -> argparse.ArgumentParser:
    """The argument parser with its five subcommands."""
    parser = _Parser(prog="aerofilter", description="Aerosol noise filtration for LiDAR point clouds.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="log progress (-v) or details (-vv) to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("filter", help="filter one cloud or a directory of frames")
    p.add_argument("--input", required=True, help="cloud file, or directory of frame_*.pcd|csv files")
    p.add_argument("--config", help="JSON configuration; initial values when absent")
    p.add_argument("--output", required=True, help="kept points (file, or directory for directory input)")
    p.add_argument("--rejected", help="rejected points (file, or directory for directory input)")
    p.add_argument("--report", help="JSON filter report")
    p.add_argument("--format", choices=_formats(), help="output encoding; inferred from the suffix by default")
    p.set_defaults(handler=commands.cmd_filter)

    p = sub.add_parser("synth", help="generate a labelled synthetic tunnel scene")
    p.add_argument("--scene-spec", help="JSON scene description; the desk-scale scene when absent")
    p.add_argument("--seed", type=int, help="overrides the scene's seed")
    p.add_argument("--output", required=True, help="cloud file to write")
    p.add_argument("--labels", help="label sidecar; defaults to <output stem>.labels.csv")
    p.add_argument("--format", choices=_formats())
    p.set_defaults(handler=commands.cmd_synth)

    p = sub.add_parser("eval", help="score rejected points against ground truth")
    p.add_argument("--input", required=True, help="the unfiltered cloud")
    p.add_argument("--labels", required=True, help="label sidecar of --input")
    p.add_argument("--rejected", required=True, help="rejected cloud written by 'filter'")
    p.add_argument("--output", required=True, help="metrics CSV; rows are appended")
    p.add_argument("--name", help="scene name in the metrics table; defaults to the input stem")
    p.add_argument("--config-name", default="default", help="configuration name in the metrics table")
    p.set_defaults(handler=commands.cmd_eval)

    p = sub.add_parser("bench", help="measure process_frame latency")
    p.add_argument("--sizes", default="10000,30000,60000", type=commands.parse_sizes, help="comma-separated point counts")
    p.add_argument("--repetitions", type=commands.parse_repetitions, default=50, help="timed runs per size, at least 10")
    p.add_argument("--config")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", required=True, help="latency CSV")
    p.add_argument("--parallel", action="store_true", help="run repetitions concurrently")
    p.set_defaults(handler=commands.cmd_bench)

    p = sub.add_parser("hist", help="intensity histogram with a fitted Weibull density")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True, help="histogram CSV")
    p.add_argument("--bins", type=int, default=DEFAULT_HISTOGRAM_BINS)
    p.add_argument("--clip-fraction", type=float, help="fit only the lowest fraction of the intensity range")
    p.add_argument("--location", choices=[str(m) for m in LocationMode], default=str(LocationMode.ZERO))
    p.set_defaults(handler=commands.cmd_hist)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the command line and return its exit code.

    Returns
    -------
    int
        0 on success, 1 on a usage error, 2 when an input cannot be read or
        processed.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE

    verbosity = min(args.verbose, 2)
    setup_logging(level=(logging_mod.WARNING, logging_mod.INFO, logging_mod.DEBUG)[verbosity])
    try:
        return args.handler(args)
    except (AeroFilterError, OSError) as e:
        logger.debug("Command %s failed", args.command, exc_info=True)
        print(f"aerofilter {args.command}: error: {e}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
