"""
Command-line entry point.

Subcommands: simgen, match, estimate, predict, evaluate, sweep, lags. Usage errors
exit with 2, data and processing errors with 1. Logs go to stderr.
"""

import argparse
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from pydantic import ValidationError as SettingsValidationError

from services.cli.app.commands import COMMANDS
from services.cli.app.core.config import RunConfig, build_run_config
from shared.config.logging import bind_run_context, get_logger, setup_logging
from shared.config.settings import get_settings
from shared.evaluation.crossval import ESTIMATION_METHODS, PREDICTION_METHODS
from shared.evaluation.sweep import parse_range
from shared.exceptions import StcError
from shared.observability.metrics import get_metrics

logger = get_logger(__name__)

# subcommand -> output role echoed with its config
MAIN_OUTPUT = {
    "simgen": "records",
    "match": "matched",
    "estimate": "speeds",
    "predict": "speeds",
    "evaluate": "report",
    "sweep": "grid",
    "lags": "lags",
}

EPILOG = """
Examples:
  stc simgen --rows 10 --cols 10 --vehicles 500 --hours 4 --seed 42 \\
      --net net.json --out traces.csv --truth truth.csv
  stc match --net net.json --records traces.csv --out matched.csv
  stc estimate --net net.json --matched matched.csv --T 80 --w 12 --out speeds.csv
  stc predict --net net.json --matched matched.csv --T 90 --w 13 --out next.csv
  stc evaluate --net net.json --matched matched.csv --method stc knn kriging arima \\
      --missing 0.1 0.2 0.5 --seed 7 --out errors.csv
  stc sweep --net net.json --matched matched.csv --T 10:120:10 --w 5:20:1 \\
      --missing 0.2 --hours 10 --seed 7 --out grid.csv
  stc lags --net net.json --matched matched.csv --window-end 40 --w 12 --out lags.csv \\
      --comparison-out comparison.csv --comparison-k 0:5:1
"""


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, help="Worker threads (default: available cores)")
    common.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help="Logging level",
    )
    common.add_argument(
        "--log-format", choices=["json", "console"], help="Log rendering on stderr"
    )
    common.add_argument("--metrics-out", help="Write Prometheus metrics text here on success")
    return common


def _add_inputs(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--net", required=True, help="Road net JSON")
    sub.add_argument("--matched", required=True, help="Matched-record CSV")


def _add_interval_flags(sub: argparse.ArgumentParser, ranges: bool = False) -> None:
    if ranges:
        sub.add_argument("--T", default="80", help="Interval lengths, start:stop:step (s)")
        sub.add_argument("--w", default="12", help="Window lengths, start:stop:step")
    else:
        sub.add_argument("--T", type=float, help="Calculation interval length (s)")
        sub.add_argument("--w", type=int, help="Sliding window length (intervals)")
    sub.add_argument("--nthr", type=int, help="Coverage threshold N_thr")
    sub.add_argument("--start-time", type=float, help="Start of interval 1 (epoch s)")
    sub.add_argument("--end-time", type=float, help="End of the span (epoch s)")


def _add_completion_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--da", type=float, help="Upstream area bound d_A")
    sub.add_argument("--nmin", type=int, help="Minimum contributors N_min")
    sub.add_argument("--vmax", type=float, help="Speed upper bound (m/s)")
    sub.add_argument("--default-speed", type=float, help="Speed with no history (m/s)")
    sub.add_argument("--tolerance", type=float, help="Solver tolerance (m/s)")
    sub.add_argument("--regions", type=int, help="Independent completion regions")
    sub.add_argument("--free-flow", type=float, help="Free-flow speed for lag fallback (m/s)")
    sub.add_argument("--lookback", type=float, help="Tracking lookback for travel times (s)")


def _add_projection_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--origin-lon", type=float, help="Projection origin longitude")
    sub.add_argument("--origin-lat", type=float, help="Projection origin latitude")


def _add_format_flag(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=["csv", "json"], default="csv", help="Table format")


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with every subcommand."""
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="stc",
        description="Travel speed estimation and prediction from crowdsensed traces",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=EPILOG,
    )
    subparsers = parser.add_subparsers(dest="command", help="Command to execute")

    # Synthetic data
    simgen = subparsers.add_parser("simgen", parents=[common], help="Generate a synthetic city")
    simgen.add_argument("--rows", type=int, help="Intersection rows")
    simgen.add_argument("--cols", type=int, help="Intersection columns")
    simgen.add_argument("--edge-length", type=float, help="Block length (m)")
    simgen.add_argument("--vehicles", type=int, help="Fleet size")
    simgen.add_argument("--hours", type=float, help="Scenario duration (h)")
    simgen.add_argument("--report-period", type=float, help="Seconds between reports")
    simgen.add_argument("--gps-noise", type=float, help="Position noise sigma (m)")
    simgen.add_argument("--wave-speed", type=float, help="Congestion wave speed (m/s)")
    simgen.add_argument("--seed", type=int, help="Random seed")
    simgen.add_argument("--T", type=float, help="Interval length of the truth table (s)")
    simgen.add_argument("--net", default="net.json", help="Road net output")
    simgen.add_argument("--out", required=True, help="Record CSV output")
    simgen.add_argument("--truth", help="Ground-truth speed table output")
    _add_projection_flags(simgen)
    _add_format_flag(simgen)

    # Map matching
    match = subparsers.add_parser("match", parents=[common], help="Map-match records")
    match.add_argument("--net", required=True, help="Road net JSON")
    match.add_argument("--records", required=True, help="Record CSV")
    match.add_argument("--out", required=True, help="Matched-record CSV output")
    match.add_argument("--dmin", type=float, help="Outlier distance D_min (m)")
    match.add_argument("--cell-size", type=float, help="Grid cell size (m)")
    match.add_argument("--max-depth", type=int, help="Tracking expansion depth")
    match.add_argument("--speed-unit", choices=["mps", "kmh", "mph"], help="Input speed unit")
    _add_projection_flags(match)

    # Estimation and prediction
    estimate = subparsers.add_parser("estimate", parents=[common], help="Complete speed tables")
    _add_inputs(estimate)
    _add_interval_flags(estimate)
    _add_completion_flags(estimate)
    _add_format_flag(estimate)
    estimate.add_argument("--out", required=True, help="Speed table output")
    estimate.add_argument("--coverage-out", help="Per-interval coverage statistics output")

    predict = subparsers.add_parser("predict", parents=[common], help="Predict interval n+1")
    _add_inputs(predict)
    _add_interval_flags(predict)
    _add_completion_flags(predict)
    _add_format_flag(predict)
    predict.add_argument(
        "--interval", type=int, help="Predict from this interval n (default: last)"
    )
    predict.add_argument("--out", required=True, help="Prediction table output")

    # Evaluation
    evaluate = subparsers.add_parser("evaluate", parents=[common], help="Per-interval errors")
    _add_inputs(evaluate)
    _add_interval_flags(evaluate)
    _add_completion_flags(evaluate)
    evaluate.add_argument(
        "--mode", choices=["estimation", "prediction"], default="estimation", help="Experiment"
    )
    evaluate.add_argument(
        "--method",
        nargs="+",
        default=["stc"],
        choices=sorted(set(ESTIMATION_METHODS) | set(PREDICTION_METHODS)),
        help="Methods to evaluate",
    )
    evaluate.add_argument(
        "--missing", type=float, nargs="+", default=[0.2], help="Missing ratios"
    )
    evaluate.add_argument("--seed", type=int, default=0, help="Seed of hidden cells")
    evaluate.add_argument("--knn-k", type=int, help="KNN neighbors")
    evaluate.add_argument("--arima-order", type=int, help="ARIMA autoregressive order")
    evaluate.add_argument("--out", required=True, help="Per-interval error CSV output")
    evaluate.add_argument("--summary-out", help="Per-method mean error CSV output")

    sweep = subparsers.add_parser("sweep", parents=[common], help="Error over a (T, w) grid")
    _add_inputs(sweep)
    _add_interval_flags(sweep, ranges=True)
    _add_completion_flags(sweep)
    sweep.add_argument(
        "--mode", choices=["estimation", "prediction"], default="estimation", help="Experiment"
    )
    sweep.add_argument(
        "--method",
        default="stc",
        choices=sorted(set(ESTIMATION_METHODS) | set(PREDICTION_METHODS)),
        help="Method evaluated in every cell",
    )
    sweep.add_argument("--missing", type=float, default=0.2, help="Missing ratio")
    sweep.add_argument("--hours", type=int, default=10, help="Sample hours per cell")
    sweep.add_argument("--seed", type=int, default=7, help="Seed of hours and hidden cells")
    sweep.add_argument("--out", required=True, help="Grid CSV output")

    # Diagnostics
    lags = subparsers.add_parser("lags", parents=[common], help="Dump one window's lag table")
    _add_inputs(lags)
    _add_interval_flags(lags)
    lags.add_argument("--window-end", type=int, required=True, help="Last interval of the window")
    lags.add_argument("--da", type=float, help="Upstream area bound d_A")
    lags.add_argument("--free-flow", type=float, help="Free-flow speed for lag fallback (m/s)")
    lags.add_argument("--lookback", type=float, help="Tracking lookback for travel times (s)")
    lags.add_argument("--out", required=True, help="Lag table CSV output")
    lags.add_argument("--stationarity-out", help="Speed stability per window length output")
    lags.add_argument(
        "--stationarity-w", default="5:20:1", help="Window lengths for the stationarity report"
    )
    lags.add_argument(
        "--comparison-out", help="Correlation at the table lag against fixed lags, output"
    )
    lags.add_argument(
        "--comparison-k", default="0:5:1", help="Fixed lags for the comparison (start:stop:step)"
    )

    return parser


def _int_range(text: str) -> list[int]:
    values = parse_range(text)
    if any(v != int(v) or v < 2 for v in values):
        raise ValueError(f"Window lengths must be integers >= 2, got {text!r}")
    return [int(v) for v in values]


def _lag_range(text: str) -> list[int]:
    values = parse_range(text)
    if any(v != int(v) or v < 0 for v in values):
        raise ValueError(f"Fixed lags must be integers >= 0, got {text!r}")
    return [int(v) for v in values]


def _command_files(
    parser: argparse.ArgumentParser, args: argparse.Namespace
) -> tuple[dict[str, str], dict[str, str], dict[str, Any]]:
    """Inputs, outputs and command options; usage problems exit through parser.error."""
    inputs: dict[str, str] = {}
    outputs: dict[str, str] = {MAIN_OUTPUT[args.command]: args.out}
    options: dict[str, Any] = {}

    if args.command == "simgen":
        outputs["net"] = args.net
        if args.truth:
            outputs["truth"] = args.truth
        return inputs, outputs, options

    inputs["net"] = args.net
    if args.command == "match":
        inputs["records"] = args.records
        return inputs, outputs, options

    inputs["matched"] = args.matched
    options["end_time"] = args.end_time

    if args.command == "estimate" and args.coverage_out:
        outputs["coverage"] = args.coverage_out
    elif args.command == "predict":
        options["interval"] = args.interval
    elif args.command == "evaluate":
        allowed = PREDICTION_METHODS if args.mode == "prediction" else ESTIMATION_METHODS
        unsupported = [m for m in args.method if m not in allowed]
        if unsupported:
            parser.error(f"methods {unsupported} are not available in {args.mode} mode")
        if any(not 0.0 <= r <= 1.0 for r in args.missing):
            parser.error("missing ratios must lie in [0, 1]")
        options.update(mode=args.mode, methods=list(args.method), missing_ratios=args.missing)
        if args.summary_out:
            outputs["summary"] = args.summary_out
    elif args.command == "sweep":
        allowed = PREDICTION_METHODS if args.mode == "prediction" else ESTIMATION_METHODS
        if args.method not in allowed:
            parser.error(f"method {args.method!r} is not available in {args.mode} mode")
        try:
            t_values = parse_range(args.T)
            w_values = _int_range(args.w)
        except ValueError as e:
            parser.error(str(e))
        if any(t <= 0 for t in t_values):
            parser.error("interval lengths must be positive")
        options.update(
            mode=args.mode,
            method=args.method,
            t_values=t_values,
            w_values=w_values,
            missing_ratio=args.missing,
            hours=args.hours,
        )
    elif args.command == "lags":
        options["window_end"] = args.window_end
        if args.stationarity_out:
            try:
                options["stationarity_w"] = _int_range(args.stationarity_w)
            except ValueError as e:
                parser.error(str(e))
            outputs["stationarity"] = args.stationarity_out
        if args.comparison_out:
            try:
                options["comparison_k"] = _lag_range(args.comparison_k)
            except ValueError as e:
                parser.error(str(e))
            outputs["comparison"] = args.comparison_out
    return inputs, outputs, options


def run_command(argv: Sequence[str] | None = None) -> int:
    """
    Parse arguments, run one subcommand and write its outputs.

    Args:
        argv: Arguments without the program name; sys.argv[1:] by default

    Returns:
        Exit status: 0 on success, 1 on data or processing errors, 2 on usage errors
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    if not args.command:
        parser.print_help(sys.stderr)
        return 2

    settings = get_settings()
    log_format = args.log_format or ("json" if settings.json_logs else "console")
    setup_logging(
        log_level=args.log_level or settings.log_level,
        json_logs=log_format == "json",
        service_name=settings.service_name,
    )
    bind_run_context(command=args.command)
    args.jobs = args.jobs or settings.jobs

    try:
        inputs, outputs, options = _command_files(parser, args)
        config: RunConfig = build_run_config(args, inputs, outputs, options)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    except SettingsValidationError as e:
        print(f"stc {args.command}: error: {e}", file=sys.stderr)
        return 2

    logger.info("command_started", jobs=config.jobs)
    try:
        COMMANDS[args.command](config)
    except StcError as e:
        logger.error(
            "command_failed",
            error=e.message,
            error_code=e.error_code,
            details=e.details,
        )
        return 1
    except (OSError, ValueError) as e:
        logger.error("command_failed", error=str(e))
        return 1

    echo = config.echo(outputs[MAIN_OUTPUT[args.command]])
    if args.metrics_out:
        Path(args.metrics_out).write_bytes(get_metrics())
    logger.info("command_finished", config_echo=str(echo))
    return 0


def main() -> None:
    """Console script entry point."""
    sys.exit(run_command())


if __name__ == "__main__":
    main()
