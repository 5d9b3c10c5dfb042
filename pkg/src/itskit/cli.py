"""Command line interface.

Two subcommands: ``analyze`` runs the full pipeline on a CSV file and writes
the report; ``simulate`` generates a synthetic series as CSV. Exit codes:
0 success, 2 invalid input or arguments, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import fields

from .core import AnalysisError, ValidationFailure, calendar_to_index
from .io import parse_csv, series_to_csv
from .pipeline import AnalysisConfig, run_pipeline
from .report import emit_report
from .simulate import SimSpec, generate

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3


def _bounds(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("bounds must be LOW,HIGH")
    return float(parts[0]), float(parts[1])


def _censor_set(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text or text.lower() == "none":
        return ()
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            "censor set must be comma-separated integer indices, or 'none'"
        ) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="itskit",
        description=(
            "Interrupted time series analysis with a data-driven change point"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    an = sub.add_parser("analyze", help="analyze a monthly series from CSV")
    an.add_argument("--input", required=True, help="CSV path, or '-' for stdin")
    an.add_argument(
        "--tet",
        required=True,
        help="intervention month: a 1-based index or a YYYY-MM date",
    )
    an.add_argument("--before", type=int, default=0, help="candidate months before the intervention")
    an.add_argument("--after", type=int, default=0, help="candidate months after the intervention")
    an.add_argument("--start-month", type=int, help="calendar month (1..12) of the first row")
    an.add_argument("--start-year", type=int, help="calendar year of the first row")
    an.add_argument("--outcome-column", default="outcome", help="name of the value column")
    an.add_argument("--date-column", help="name of a YYYY-MM date column, if present")
    an.add_argument("--bounds", type=_bounds, help="admissible outcome range LOW,HIGH")
    an.add_argument(
        "--censor-set",
        type=_censor_set,
        help=(
            "indices dropped by the censored baseline (comma list, or 'none' to "
            "keep all); default is the candidate window"
        ),
    )
    an.add_argument("--gls-pass", action="store_true", help="re-estimate the mean after modeling the errors")
    an.add_argument("--gls-iterations", type=int, default=1)
    an.add_argument("--workers", type=int, help="threads for the candidate search")
    an.add_argument("--format", choices=("json", "text"), default="json")
    an.add_argument("--output", help="output path (default: stdout)")

    sim = sub.add_parser("simulate", help="generate a synthetic series as CSV")
    sim.add_argument("--config", help="JSON file of generator settings")
    sim.add_argument("--length", type=int)
    sim.add_argument("--change-point", type=int)
    sim.add_argument("--intercept", type=float)
    sim.add_argument("--slope", type=float)
    sim.add_argument("--intercept-change", type=float)
    sim.add_argument("--slope-change", type=float)
    sim.add_argument("--phi-pre", type=float)
    sim.add_argument("--phi-post", type=float)
    sim.add_argument("--sd-pre", type=float)
    sim.add_argument("--sd-post", type=float)
    sim.add_argument("--seed", type=int)
    sim.add_argument("--start-month", type=int)
    sim.add_argument("--start-year", type=int)
    sim.add_argument("--bounds", type=_bounds)
    sim.add_argument("--output", help="output path (default: stdout)")
    return parser


def _write(text: str, path: str | None) -> None:
    if path and path != "-":
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run_analyze(args) -> int:
    if args.input == "-":
        series = parse_csv(
            sys.stdin,
            outcome=args.outcome_column,
            date=args.date_column,
            start_month=args.start_month,
            start_year=args.start_year,
            bounds=args.bounds,
        )
    else:
        series = parse_csv(
            args.input,
            outcome=args.outcome_column,
            date=args.date_column,
            start_month=args.start_month,
            start_year=args.start_year,
            bounds=args.bounds,
        )

    tet = args.tet.strip()
    try:
        if "-" in tet and not tet.lstrip("-").isdigit():
            year, month = tet.split("-")[:2]
            intervention = calendar_to_index(int(month), int(year), series)
        else:
            intervention = int(tet)
    except ValueError as err:
        raise ValidationFailure([f"--tet {tet!r}: {err}"]) from None

    config = AnalysisConfig(
        intervention=intervention,
        before=args.before,
        after=args.after,
        censor=args.censor_set,
        gls=args.gls_pass,
        gls_iterations=args.gls_iterations,
        workers=args.workers,
    )
    report = run_pipeline(series, config)
    _write(emit_report(report, args.format), args.output)
    return EXIT_OK


def _run_simulate(args) -> int:
    settings = {}
    if args.config:
        try:
            with open(args.config) as fh:
                loaded = json.load(fh)
        except json.JSONDecodeError as err:
            raise ValidationFailure([f"{args.config}: invalid JSON ({err})"]) from None
        if not isinstance(loaded, dict):
            raise ValidationFailure([f"{args.config}: expected a JSON object"])
        settings.update(loaded)
    names = {f.name for f in fields(SimSpec)}
    unknown = set(settings) - names
    if unknown:
        raise ValidationFailure(
            [f"unknown generator setting {u!r} in {args.config}" for u in sorted(unknown)]
        )
    for name in names:
        value = getattr(args, name, None)
        if value is not None:
            settings[name] = value
    if "bounds" in settings and settings["bounds"] is not None:
        settings["bounds"] = tuple(settings["bounds"])
    try:
        spec = SimSpec(**settings)
    except (TypeError, ValueError) as err:
        raise ValidationFailure([str(err)]) from None
    _write(series_to_csv(generate(spec)), args.output)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            return _run_analyze(args)
        return _run_simulate(args)
    except ValidationFailure as err:
        for issue in err.issues:
            print(f"error: {issue}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_VALIDATION
    except AnalysisError as err:
        print(f"numerical error: {err}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
