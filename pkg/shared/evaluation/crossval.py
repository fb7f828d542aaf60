"""
Hide-and-recover cross-validation and one-step prediction evaluation.
"""

from collections.abc import Iterable, Sequence

import numpy as np

from shared.baselines.config import BaselineSettings, get_baseline_settings
from shared.baselines.dispatch import estimate, predict
from shared.completion.engine import complete_all, fallback_value
from shared.config.logging import get_logger
from shared.evaluation.dataset import PreparedDataset
from shared.evaluation.metrics import relative_error
from shared.evaluation.report import EvalReport
from shared.exceptions import ZeroTruthNormError
from shared.prediction.config import PredictionSettings, get_prediction_settings
from shared.prediction.predictor import PredictionState, predict_next
from shared.speed.series import Provenance, SpeedSeries

logger = get_logger(__name__)

ESTIMATION_METHODS: tuple[str, ...] = ("stc", "knn", "kriging", "arima", "mean")
PREDICTION_METHODS: tuple[str, ...] = ("stc", "kf", "arima")


def hide_cells(measured: SpeedSeries, n: int, missing_ratio: float, seed: int) -> list[str]:
    """
    Seeded choice of measured cells of interval n to hide.

    The choice depends only on (seed, missing_ratio, n).

    Returns:
        Hidden segment ids, ascending
    """
    if not 0.0 <= missing_ratio <= 1.0:
        raise ValueError("missing_ratio must lie in [0, 1]")
    row_is_measured = measured.provenance[:, n - 1] == Provenance.MEASURED
    candidates = [sid for sid, m in zip(measured.segment_ids, row_is_measured, strict=True) if m]
    count = int(round(missing_ratio * len(candidates)))
    if count == 0:
        return []
    rng = np.random.default_rng([seed, n, int(round(missing_ratio * 1_000_000))])
    chosen = rng.choice(len(candidates), size=count, replace=False)
    return sorted(candidates[i] for i in chosen)


def _history_mean(series: SpeedSeries, segment_id: str, n: int, w: int) -> float:
    values = series.vector(segment_id, max(1, n - w + 1), n - 1)
    values = values[~np.isnan(values)]
    return float(values.mean()) if values.size else float("nan")


def _recover(
    method: str,
    hidden: Sequence[str],
    n: int,
    work: SpeedSeries,
    dataset: PreparedDataset,
    baseline_settings: BaselineSettings,
) -> list[float]:
    engine = dataset.engine
    default = engine.settings.default_speed
    if method == "stc":
        complete_all(
            n, engine.state(work, dataset.lags[n]), engine.settings, engine.regions, engine.jobs
        )
        return [float(work.values[work.row(s), n - 1]) for s in hidden]
    if method == "mean":
        estimates = {s: _history_mean(work, s, n, dataset.w) for s in hidden}
    else:
        estimates = estimate(
            method, hidden, n, work, dataset.points, dataset.w, baseline_settings
        )
    recovered = []
    for s in hidden:
        value = estimates.get(s, float("nan"))
        if not np.isfinite(value):
            value = fallback_value(s, n, work, default)
        recovered.append(float(value))
    return recovered


def cross_validate(
    dataset: PreparedDataset,
    missing_ratio: float,
    method: str,
    seed: int,
    intervals: Iterable[int] | None = None,
    baseline_settings: BaselineSettings | None = None,
) -> EvalReport:
    """
    Hide a fraction of each interval's measured cells and recover them.

    History comes from the completed reference series; interval n shows only its
    measured cells minus the hidden ones. Errors span hidden cells only.

    Args:
        dataset: Prepared dataset
        missing_ratio: Fraction of measured cells hidden per interval
        method: stc, knn, kriging, arima or mean
        seed: Random seed
        intervals: Intervals to evaluate; all evaluable ones by default
        baseline_settings: Baseline settings

    Returns:
        One row per interval
    """
    if method not in ESTIMATION_METHODS:
        raise ValueError(f"Unknown estimation method: {method}")
    baseline_settings = baseline_settings or get_baseline_settings()
    selected = list(intervals) if intervals is not None else dataset.evaluable_intervals()
    work = dataset.reference.copy()
    records = []

    for n in selected:
        hidden = hide_cells(dataset.measured, n, missing_ratio, seed)
        if not hidden:
            records.append((n, method, missing_ratio, 0, 0.0))
            continue
        saved_values = work.values[:, n - 1].copy()
        saved_provenance = work.provenance[:, n - 1].copy()
        work.values[:, n - 1] = dataset.measured.values[:, n - 1]
        work.provenance[:, n - 1] = dataset.measured.provenance[:, n - 1]
        truth = np.array([dataset.measured.values[dataset.measured.row(s), n - 1] for s in hidden])
        for s in hidden:
            work.clear(s, n)

        recovered = _recover(method, hidden, n, work, dataset, baseline_settings)

        work.values[:, n - 1] = saved_values
        work.provenance[:, n - 1] = saved_provenance
        try:
            error = relative_error(truth, np.array(recovered))
        except ZeroTruthNormError:
            error = float("nan")
        records.append((n, method, missing_ratio, len(hidden), error))

    report = EvalReport.from_records(records)
    logger.info(
        "cross_validation_finished",
        method=method,
        missing_ratio=missing_ratio,
        intervals=len(records),
        mean_error=report.mean_error(),
    )
    return report


def compare_methods(
    dataset: PreparedDataset,
    methods: Sequence[str],
    missing_ratios: Sequence[float],
    seed: int,
    intervals: Iterable[int] | None = None,
    baseline_settings: BaselineSettings | None = None,
) -> EvalReport:
    """Cross-validation of every (method, missing ratio) combination."""
    selected = list(intervals) if intervals is not None else None
    return EvalReport.concat(
        cross_validate(dataset, ratio, method, seed, selected, baseline_settings)
        for ratio in missing_ratios
        for method in methods
    )


def evaluate_prediction(
    dataset: PreparedDataset,
    methods: Sequence[str] = PREDICTION_METHODS,
    intervals: Iterable[int] | None = None,
    prediction_settings: PredictionSettings | None = None,
    baseline_settings: BaselineSettings | None = None,
) -> EvalReport:
    """
    One-step prediction errors against the measured cells of interval n+1.

    Predictions use the reference series through interval n only.

    Returns:
        One row per (interval n+1, method); error NaN when n+1 has no measured cell
    """
    prediction_settings = prediction_settings or get_prediction_settings()
    baseline_settings = baseline_settings or get_baseline_settings()
    for method in methods:
        if method not in PREDICTION_METHODS:
            raise ValueError(f"Unknown prediction method: {method}")

    reference = dataset.reference
    measured = dataset.measured
    selected = (
        list(intervals)
        if intervals is not None
        else [n for n in dataset.evaluable_intervals() if n < dataset.n_intervals]
    )
    records = []
    for n in selected:
        is_measured = measured.provenance[:, n] == Provenance.MEASURED
        targets = [s for s, m in zip(measured.segment_ids, is_measured, strict=True) if m]
        truth = measured.values[is_measured, n]
        for method in methods:
            if not targets:
                records.append((n + 1, method, 0.0, 0, float("nan")))
                continue
            if method == "stc":
                state = PredictionState(
                    reference, dataset.lags[n], dataset.engine.upstream, dataset.w
                )
                preds = {s: predict_next(s, n, state, prediction_settings) for s in targets}
            else:
                preds = predict(method, targets, n, reference, dataset.w, baseline_settings)
            estimate_vec = np.array(
                [preds.get(s, float(reference.values[reference.row(s), n - 1])) for s in targets]
            )
            try:
                error = relative_error(truth, estimate_vec)
            except ZeroTruthNormError:
                error = float("nan")
            records.append((n + 1, method, 0.0, len(targets), error))

    report = EvalReport.from_records(records)
    logger.info("prediction_evaluated", methods=list(methods), intervals=len(selected))
    return report
