"""Command line entry point.

Exit codes: 0 the experiment ran, 2 a hypothesis (or the config) was
refused, 3 a numeric failure.
"""
import argparse
import os
import sys

from .config import DEFAULT_MAX_N, EXPERIMENTS, load_config
from .errors import ConfigError, HypothesisRefusal, NumericFailure
from .experiments import run
from .report import refusal_report

EXIT_OK = 0
EXIT_REFUSED = 2
EXIT_NUMERIC = 3


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hankelmu",
        description="Run a moment-Hankel verification experiment from a JSON config.")
    parser.add_argument("experiment", choices=EXPERIMENTS, help="experiment to run")
    parser.add_argument("--config", required=True, help="path to the JSON config")
    parser.add_argument("--out", default=None,
                        help="directory for <experiment>.csv and <experiment>.json")
    parser.add_argument("--max-n", type=int, default=None,
                        help=f"largest size to run (default {DEFAULT_MAX_N})")
    parser.add_argument("--tol", type=float, default=None,
                        help="power-iteration tolerance (default 1e-9)")
    parser.add_argument("--format", choices=("csv", "json"), default="json",
                        help="what to print on stdout")
    return parser


def _emit(report, args):
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        base = os.path.join(args.out, report.experiment)
        with open(base + ".csv", "w", encoding="utf-8", newline="") as fh:
            fh.write(report.to_csv())
        with open(base + ".json", "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
    sys.stdout.write(report.to_csv() if args.format == "csv" else report.to_json())


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, experiment=args.experiment, tol=args.tol,
                          max_n=args.max_n)
    except ConfigError as exc:
        print(f"hankelmu: config error: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    try:
        report = run(cfg)
    except HypothesisRefusal as exc:
        print(f"hankelmu: refused ({exc.reason}): {exc}", file=sys.stderr)
        _emit(refusal_report(cfg.experiment, exc, cfg.echo()), args)
        return EXIT_REFUSED
    except NumericFailure as exc:
        print(f"hankelmu: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ConfigError as exc:
        print(f"hankelmu: config error: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    _emit(report, args)
    if report.failures:
        print(f"hankelmu: {len(report.failures)} numeric failure(s), see report",
              file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
