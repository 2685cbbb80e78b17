#!/usr/bin/env python3
"""
Morse decomposition of cell complexes from the command line.

PURPOSE:
    Reads a simplicial or cubical complex with scalar data, derives a discrete
    gradient field and writes its regions as JSON:
    1. Loader reads OFF, facet lists, grid rasters or field JSON
    2. Gradient stage extends vertex values lower star by lower star
    3. Optional cancellation, merge repair and boundary-critical regions
    4. Descending and ascending regions, Morse-Smale labels and routes

.ENV EXAMPLE:
    MORSE_THREADS=4
    MORSE_MAX_DIMENSION=6
    MORSE_REPAIR_STEP_FACTOR=10

RUN EXAMPLES:
    python cli.py decompose --input square.off --values square.csv --boundary
    python cli.py simplify --input terrain.txt --format grid --simplify 0.05
    python cli.py route --input terrain.txt --format grid --route 12 40 --output route.json
    python cli.py validate --input field.json --format field-json
"""

import argparse
import sys
from typing import Optional

from config import INPUT_FORMATS, RunConfig, default_threads
from providers import write_json
from workflow import PLANS, run_pipeline

PARSE_ERROR = 1
PIPELINE_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per pipeline plan."""
    parser = argparse.ArgumentParser(
        description="Discrete Morse decomposition of simplicial and cubical complexes"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for command in PLANS:
        p = sub.add_parser(command)
        p.add_argument("--input", required=True, help="Complex, raster or field file")
        p.add_argument("--format", default="off", choices=INPUT_FORMATS, help="Input format")
        p.add_argument("--values", help="CSV of vertex values (default: embedded in input)")
        p.add_argument("--boundary", action="store_true", help="Build boundary-critical regions")
        p.add_argument("--ascending", action="store_true", help="Build ascending regions")
        p.add_argument("--repair", action="store_true", help="Push merge points out of regions")
        p.add_argument("--simplify", type=float, default=0.0, metavar="T",
                       help="Cancel critical pairs closer than T (0 disables)")
        p.add_argument("--route", type=int, nargs=2, metavar=("START", "TARGET"),
                       help="Route from a cell to a maximum")
        p.add_argument("--output", help="Output JSON path (default: stdout)")
        p.add_argument("--threads", type=int, default=default_threads(),
                       help="Worker threads per dimension")
        p.add_argument("--verbose", action="store_true", help="Print stage messages to stderr")
        p.add_argument("--allow-high-dimension", action="store_true",
                       help="Accept inputs above the dimension cap")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """
    Build a RunConfig from parsed arguments.

    Raises:
        ValueError: If the combination of flags is invalid
    """
    return RunConfig(
        command=args.command,
        input_path=args.input,
        input_format=args.format,
        values_path=args.values,
        boundary=args.boundary,
        ascending=args.ascending,
        repair=args.repair,
        simplify_threshold=args.simplify,
        route=tuple(args.route) if args.route else None,
        output_path=args.output,
        threads=args.threads,
        verbose=args.verbose,
        allow_high_dimension=args.allow_high_dimension,
    )


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
    except ValueError as e:
        parser.error(str(e))

    state = run_pipeline(config)

    if config.verbose:
        for message in state.get("messages", []):
            print(message.content, file=sys.stderr)

    error = state.get("error")
    if error:
        if error["type"] == "MalformedInputError":
            print(f"❌ ERROR: {error['message']}", file=sys.stderr)
            return PARSE_ERROR
        print(f"❌ ERROR: {error['type']}: {error['message']}", file=sys.stderr)
        write_json({"error": error}, config.output_path)
        return PIPELINE_ERROR

    write_json(state["result"], config.output_path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
