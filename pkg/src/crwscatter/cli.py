"""Command-line interface: ``sweep``, ``figure`` and ``validate``."""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .config import load_config
from .errors import ScatteringError
from .figures import FIGURES, run_figure
from .scattering import COLUMNS, sweep
from .tables import PRECISION_ENV, audit_rows, render
from .validation import run_validation


def _cmd_sweep(args) -> int:
    config = load_config(args.config)
    fmt = args.format or config.output_format
    points = args.points or config.sweep.points
    start, stop = config.sweep_range()
    rows = sweep(np.linspace(start, stop, points), config.cavity, config.waveguide,
                 axis=config.sweep.axis, epsilon=config.sweep.epsilon)
    audit_rows(rows)
    text = render(COLUMNS, rows, fmt)
    dest = args.out or config.output_path
    if dest is None or dest == "-":
        sys.stdout.write(text)
    else:
        with open(dest, "w", newline="") as fh:
            fh.write(text)
    return 0


def _cmd_figure(args) -> int:
    names = FIGURES if args.name == "all" else (args.name,)
    for name in names:
        for path in run_figure(name, args.out, fmt=args.format or "csv", points=args.points or 1001):
            print(path)
    return 0


def _cmd_validate(args) -> int:
    report = run_validation(load_config(args.config))
    text = report.render()
    sys.stdout.write(text)
    if args.report:
        with open(args.report, "w", newline="") as fh:
            fh.write(text)
    return report.exit_status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crwscatter",
        description="Single-photon transmission/reflection in a coupled-resonator waveguide with a side cavity.",
        epilog=f"Set {PRECISION_ENV} to change the number of significant digits written (default 17).",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--points", type=int, help="grid points (default 1001)")
    common.add_argument("--seed", type=int, help="accepted for interface compatibility; output is deterministic")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", parents=[common], help="scattering table for a config file")
    p.add_argument("config")
    p.add_argument("--out", help="output file (default: config's [output] path, else stdout)")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("figure", parents=[common], help="data tables behind a figure")
    p.add_argument("name", choices=(*FIGURES, "all"))
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_figure)

    p = sub.add_parser("validate", parents=[common], help="run the oracle checks of a config file")
    p.add_argument("config")
    p.add_argument("--report", help="also write the report to this file")
    p.set_defaults(func=_cmd_validate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.points is not None and args.points < 2:
        print("crwscatter: error: --points must be >= 2", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (ScatteringError, OSError) as exc:
        print(f"crwscatter: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
