"""
Evaluation datasets: matched traces over a time span, prepared per (T, w).

Preparation derives the measured series, the lag table of every window, and a
reference series completed forward with the estimator; hidden-cell experiments
then run against that reference.
"""

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

from shared.baselines.spatial import CentralPoints
from shared.completion.config import CompletionSettings, get_completion_settings
from shared.completion.engine import CompletionEngine
from shared.config.logging import get_logger
from shared.correlation.config import CorrelationSettings, get_correlation_settings
from shared.correlation.lag import LagEstimator, LagTable
from shared.ingest.coverage import CoverageTable
from shared.ingest.intervals import IntervalIndex
from shared.mapmatch.models import MatchedPoint
from shared.roadnet.models import RoadNet
from shared.speed.calculator import build_speed_series
from shared.speed.series import SpeedSeries

logger = get_logger(__name__)


@dataclass
class PreparedDataset:
    """A dataset bucketed with one (T, w)."""

    interval_seconds: float
    w: int
    index: IntervalIndex
    measured: SpeedSeries
    coverage: CoverageTable
    reference: SpeedSeries
    lags: dict[int, LagTable]
    engine: CompletionEngine
    points: CentralPoints

    @property
    def n_intervals(self) -> int:
        return self.measured.n_intervals

    def evaluable_intervals(self) -> list[int]:
        """Intervals after the initialization span."""
        return list(range(self.w + 1, self.n_intervals + 1))

    def intervals_within(self, begin: float, end: float) -> list[int]:
        """Evaluable intervals lying entirely inside [begin, end)."""
        found = []
        for j in self.evaluable_intervals():
            lo, hi = self.index.bounds(j)
            if lo >= begin and hi <= end:
                found.append(j)
        return found


@dataclass
class EvaluationDataset:
    """Road net plus matched traces over [start_time, end_time)."""

    net: RoadNet
    traces: Mapping[str, Sequence[MatchedPoint]]
    start_time: float
    end_time: float
    nthr: int = 2
    completion: CompletionSettings = field(default_factory=get_completion_settings)
    correlation: CorrelationSettings = field(default_factory=get_correlation_settings)
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.end_time <= self.start_time:
            raise ValueError("end_time must be after start_time")
        self._points: CentralPoints | None = None

    @property
    def duration(self) -> float:
        return self.end_time - self.start_time

    @property
    def points(self) -> CentralPoints:
        if self._points is None:
            self._points = CentralPoints(self.net)
        return self._points

    def prepare(self, interval_seconds: float, w: int) -> PreparedDataset:
        """
        Bucket, estimate lags and build the completed reference series.

        Args:
            interval_seconds: T in seconds
            w: Window length in intervals

        Returns:
            PreparedDataset
        """
        index = IntervalIndex(self.start_time, interval_seconds)
        n_intervals = index.count_until(self.end_time)
        measured, coverage = build_speed_series(
            self.traces, self.net, index, self.nthr, n_intervals
        )
        engine = CompletionEngine(self.net, self.completion, w=w, jobs=self.jobs)
        estimator = LagEstimator(self.net, self.traces, index, self.correlation, w=w)
        pairs = engine.pairs()

        reference = measured.copy()
        engine.initialize(reference)
        lags: dict[int, LagTable] = {}
        previous: LagTable | None = None
        for n in range(w + 1, n_intervals + 1):
            previous = lags[n] = estimator.build(n, pairs, previous)
            engine.complete_interval(reference, n, lags[n])

        logger.info(
            "dataset_prepared",
            interval_seconds=interval_seconds,
            w=w,
            intervals=n_intervals,
            measured_cells=int((measured.provenance != 0).sum()),
        )
        return PreparedDataset(
            interval_seconds=interval_seconds,
            w=w,
            index=index,
            measured=measured,
            coverage=coverage,
            reference=reference,
            lags=lags,
            engine=engine,
            points=self.points,
        )
