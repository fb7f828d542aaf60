"""
Estimation pipeline processor.

Orchestrates one run: bucket matched points into intervals, measure covered
segments, estimate the lag table of every window, complete every interval, and
optionally predict one interval ahead.
"""

import math
import time
from collections.abc import Mapping, Sequence

from shared.completion.config import CompletionSettings, get_completion_settings
from shared.completion.engine import CompletionEngine
from shared.config.logging import get_logger
from shared.correlation.config import CorrelationSettings, get_correlation_settings
from shared.correlation.lag import LagEstimator, LagTable
from shared.exceptions import DataFormatError, ValidationError
from shared.ingest.intervals import IntervalIndex
from shared.mapmatch.models import MatchedPoint
from shared.prediction.config import PredictionSettings, get_prediction_settings
from shared.prediction.predictor import Predictor
from shared.roadnet.models import RoadNet
from shared.speed.calculator import build_speed_series
from shared.speed.series import Provenance, SpeedSeries
from workers.estimation.models import EstimationOutput, EstimationRequest, EstimationSummary

logger = get_logger(__name__)

Traces = Mapping[str, Sequence[MatchedPoint]]


class EstimationProcessor:
    """
    Processor for the estimation pipeline.

    Holds the road net and settings; every call to ``process`` is independent.
    """

    def __init__(
        self,
        net: RoadNet,
        completion_settings: CompletionSettings | None = None,
        correlation_settings: CorrelationSettings | None = None,
        prediction_settings: PredictionSettings | None = None,
        jobs: int = 1,
    ):
        """
        Initialize estimation processor.

        Args:
            net: Road net the traces were matched against
            completion_settings: Completion tunables (d_A, N_min, v_max, ...)
            correlation_settings: Lag estimation tunables
            prediction_settings: Predictor tunables
            jobs: Worker threads for region-parallel completion
        """
        self.net = net
        self.completion_settings = completion_settings or get_completion_settings()
        self.correlation_settings = correlation_settings or get_correlation_settings()
        self.prediction_settings = prediction_settings or get_prediction_settings()
        self.jobs = jobs
        self._engines: dict[int, CompletionEngine] = {}

    def engine(self, w: int) -> CompletionEngine:
        """Completion engine for window length w, built once per w."""
        if w not in self._engines:
            self._engines[w] = CompletionEngine(
                self.net, self.completion_settings, w=w, jobs=self.jobs
            )
        return self._engines[w]

    def interval_index(
        self, traces: Traces, request: EstimationRequest
    ) -> tuple[IntervalIndex, int]:
        """
        Resolve the interval grid of a run.

        Returns:
            (index, number of intervals)

        Raises:
            DataFormatError: If the span must come from the traces but none are given
        """
        timestamps = [p.timestamp for trace in traces.values() for p in trace]
        if (request.start_time is None or request.end_time is None) and not timestamps:
            raise DataFormatError("No matched points to derive the time span from")

        start = request.start_time
        if start is None:
            start = float(math.floor(min(timestamps)))
        index = IntervalIndex(start, request.interval_seconds)
        if request.end_time is not None:
            n_intervals = index.count_until(request.end_time)
        else:
            n_intervals = index.interval_of(max(timestamps)) or 0
        return index, n_intervals

    def process(self, traces: Traces, request: EstimationRequest) -> EstimationOutput:
        """
        Run the estimation pipeline.

        Args:
            traces: Matched traces keyed by vehicle
            request: Interval length, window, coverage threshold and span

        Returns:
            EstimationOutput with measured and completed series, coverage and lags
        """
        started = time.perf_counter()
        w = request.w

        # Step 1: measure covered segments
        index, n_intervals = self.interval_index(traces, request)
        logger.info(
            "estimation_started",
            interval_seconds=request.interval_seconds,
            w=w,
            nthr=request.nthr,
            intervals=n_intervals,
        )
        measured, coverage = build_speed_series(
            traces, self.net, index, request.nthr, n_intervals
        )

        # Step 2: initialization span
        engine = self.engine(w)
        series = measured.copy()
        initialized = engine.initialize(series)
        if n_intervals <= w:
            logger.warning("no_interval_after_initialization", intervals=n_intervals, w=w)

        # Step 3: lags and completion, window by window
        estimator = LagEstimator(self.net, traces, index, self.correlation_settings, w=w)
        pairs = engine.pairs()
        lags: dict[int, LagTable] = {}
        previous: LagTable | None = None
        summary = EstimationSummary(
            intervals=n_intervals,
            segments=len(self.net),
            measured=initialized.measured,
            initialized=initialized.initialized,
        )
        for n in range(w + 1, n_intervals + 1):
            previous = lags[n] = estimator.build(n, pairs, previous)
            filled = engine.complete_interval(series, n, lags[n])
            summary.measured += filled.measured
            summary.completed += filled.completed
            summary.fallback += filled.fallback

        summary.lag_entries = sum(len(table) for table in lags.values())
        summary.seconds = time.perf_counter() - started
        logger.info("estimation_finished", **summary.model_dump())
        return EstimationOutput(
            index=index,
            measured=measured,
            series=series,
            coverage=coverage,
            lags=lags,
            summary=summary,
        )

    def predict(self, output: EstimationOutput, w: int, n: int | None = None) -> SpeedSeries:
        """
        Predict every segment for interval n+1.

        Args:
            output: Finished estimation run
            w: Window length the run used
            n: Last interval to predict from; defaults to the last interval of the run

        Returns:
            Series of n+1 intervals with PREDICTED cells in column n+1 only

        Raises:
            ValidationError: If n has no lag table (n <= w or beyond the run)
        """
        n = output.n_intervals if n is None else n
        if n not in output.lags:
            raise ValidationError(
                f"Prediction needs an interval in {w + 1}..{output.n_intervals}", field="n", value=n
            )
        predictor = Predictor(self.engine(w).upstream, self.prediction_settings, w=w)
        predictions = predictor.predict_interval(output.series, n, output.lags[n])

        result = SpeedSeries(output.series.segment_ids, n + 1)
        for segment_id, speed in predictions.items():
            result.set(segment_id, n + 1, speed, Provenance.PREDICTED)
        logger.info("interval_predicted", n=n, segments=len(predictions))
        return result

    def lag_table(self, traces: Traces, request: EstimationRequest, window_end: int) -> LagTable:
        """
        Lag table of one window, with the free-flow fallback only.

        Raises:
            ValidationError: If the window starts before interval 1
        """
        if window_end < request.w:
            raise ValidationError(
                f"Window end must be at least w={request.w}", field="window_end", value=window_end
            )
        index, _ = self.interval_index(traces, request)
        estimator = LagEstimator(self.net, traces, index, self.correlation_settings, w=request.w)
        return estimator.build(window_end, self.engine(request.w).pairs())
