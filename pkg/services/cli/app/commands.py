"""
Command implementations.

Each command reads its inputs from files, runs one pipeline stage and writes its
outputs; nothing is shared between invocations except files.
"""

from collections.abc import Callable
from pathlib import Path

from services.cli.app.core.config import RunConfig
from shared.config.logging import get_logger
from shared.correlation.lag import lag_comparison, stationarity_report
from shared.evaluation.crossval import compare_methods, evaluate_prediction
from shared.evaluation.dataset import EvaluationDataset
from shared.evaluation.sweep import parameter_sweep
from shared.ingest.coverage import coverage_summary
from shared.ingest.intervals import IntervalIndex
from shared.ingest.projection import LocalProjection
from shared.ingest.records import format_records, parse_records
from shared.mapmatch.io import read_matched, write_matched
from shared.mapmatch.matcher import MapMatcher
from shared.roadnet.loader import load_roadnet, save_roadnet
from shared.simgen.traces import build_scenario
from shared.speed.calculator import build_speed_series
from shared.speed.io import write_speed_table
from workers.estimation.models import EstimationRequest
from workers.estimation.processor import EstimationProcessor

logger = get_logger(__name__)


def _projection(config: RunConfig) -> LocalProjection:
    return LocalProjection(config.ingest.origin_lon, config.ingest.origin_lat)


def _processor(config: RunConfig) -> EstimationProcessor:
    return EstimationProcessor(
        load_roadnet(config.inputs["net"]),
        completion_settings=config.completion,
        correlation_settings=config.correlation,
        prediction_settings=config.prediction,
        jobs=config.jobs,
    )


def _request(config: RunConfig) -> EstimationRequest:
    return EstimationRequest(
        interval_seconds=config.interval_seconds,
        w=config.w,
        nthr=config.ingest.nthr,
        start_time=config.ingest.start_time,
        end_time=config.options.get("end_time"),
    )


def run_simgen(config: RunConfig) -> None:
    """Generate a grid net, a fleet's records and, optionally, ground-truth speeds."""
    settings = config.simulation
    scenario = build_scenario(settings)
    save_roadnet(scenario.net, config.outputs["net"])

    lines = format_records(scenario.records, _projection(config))
    Path(config.outputs["records"]).write_text("\n".join(lines) + "\n")

    truth = config.outputs.get("truth")
    if truth:
        index = IntervalIndex(settings.start_time, config.interval_seconds)
        n_intervals = index.count_until(scenario.end_time)
        write_speed_table(scenario.field.ground_truth(index, n_intervals), truth, config.format)

    logger.info(
        "simgen_written",
        segments=len(scenario.net),
        records=len(scenario.records),
        truth=bool(truth),
    )


def run_match(config: RunConfig) -> None:
    """Map-match a record file onto the road net."""
    net = load_roadnet(config.inputs["net"])
    with open(config.inputs["records"], encoding="utf-8", newline="") as handle:
        parsed = parse_records(handle, _projection(config), config.ingest.speed_unit)
    matcher = MapMatcher(net, config.mapmatch, jobs=config.jobs)
    write_matched(matcher.match_records(parsed.records), config.outputs["matched"])


def run_estimate(config: RunConfig) -> None:
    """Complete the speed table of every interval."""
    processor = _processor(config)
    traces = read_matched(config.inputs["matched"])
    output = processor.process(traces, _request(config))
    write_speed_table(output.series, config.outputs["speeds"], config.format)

    coverage_out = config.outputs.get("coverage")
    if coverage_out:
        coverage_summary(output.coverage).to_csv(coverage_out, index=False, float_format="%.6f")


def run_predict(config: RunConfig) -> None:
    """Predict interval n+1 from the completed series through n."""
    processor = _processor(config)
    traces = read_matched(config.inputs["matched"])
    output = processor.process(traces, _request(config))
    predicted = processor.predict(output, config.w, config.options.get("interval"))
    last = predicted.n_intervals
    write_speed_table(predicted, config.outputs["speeds"], config.format, intervals=[last])


def _dataset(config: RunConfig) -> EvaluationDataset:
    processor = _processor(config)
    traces = read_matched(config.inputs["matched"])
    index, n_intervals = processor.interval_index(traces, _request(config))
    return EvaluationDataset(
        net=processor.net,
        traces=traces,
        start_time=index.start_time,
        end_time=index.bounds(n_intervals)[1],
        nthr=config.ingest.nthr,
        completion=config.completion,
        correlation=config.correlation,
        jobs=config.jobs,
    )


def run_evaluate(config: RunConfig) -> None:
    """Per-interval relative errors of the selected methods."""
    prepared = _dataset(config).prepare(config.interval_seconds, config.w)
    methods = config.options["methods"]
    if config.options.get("mode") == "prediction":
        report = evaluate_prediction(
            prepared,
            methods,
            prediction_settings=config.prediction,
            baseline_settings=config.baseline,
        )
    else:
        report = compare_methods(
            prepared,
            methods,
            config.options["missing_ratios"],
            config.seed if config.seed is not None else 0,
            baseline_settings=config.baseline,
        )
    report.to_csv(config.outputs["report"])

    summary_out = config.outputs.get("summary")
    if summary_out:
        report.summary().to_csv(summary_out, index=False, float_format="%.6f")
    print(report.summary().to_string(index=False))


def run_sweep(config: RunConfig) -> None:
    """Mean relative error over a (T, w) grid."""
    grid = parameter_sweep(
        _dataset(config),
        config.options["t_values"],
        config.options["w_values"],
        config.options["missing_ratio"],
        config.options["hours"],
        config.seed if config.seed is not None else 0,
        method=config.options["method"],
        mode=config.options["mode"],
        jobs=config.jobs,
    )
    grid.to_csv(config.outputs["grid"], index=False, float_format="%.6f")


def run_lags(config: RunConfig) -> None:
    """Dump the lag table of one window, with optional stationarity and lag comparison."""
    processor = _processor(config)
    traces = read_matched(config.inputs["matched"])
    request = _request(config)
    table = processor.lag_table(traces, request, config.options["window_end"])
    table.to_frame().to_csv(config.outputs["lags"], index=False)

    stationarity_out = config.outputs.get("stationarity")
    if stationarity_out:
        index, n_intervals = processor.interval_index(traces, request)
        measured, _ = build_speed_series(traces, processor.net, index, request.nthr, n_intervals)
        report = stationarity_report(measured, config.options["stationarity_w"])
        report.to_csv(stationarity_out, index=False, float_format="%.6f")

    comparison_out = config.outputs.get("comparison")
    if comparison_out:
        output = processor.process(traces, request)
        comparison = lag_comparison(output.series, table, config.options["comparison_k"])
        comparison.to_csv(comparison_out, index=False, float_format="%.6f")
        logger.info(
            "lag_comparison_written",
            pairs=len(comparison),
            window_end=table.window_end,
            tracked=int((comparison["source"] == "tracked").sum()),
        )


COMMANDS: dict[str, Callable[[RunConfig], None]] = {
    "simgen": run_simgen,
    "match": run_match,
    "estimate": run_estimate,
    "predict": run_predict,
    "evaluate": run_evaluate,
    "sweep": run_sweep,
    "lags": run_lags,
}
