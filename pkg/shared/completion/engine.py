"""
Recursive filling of travel-speed vacancies for one interval.

Each vacant segment visits its upstream area from vicinity to remote. When it is not
calculable, the vacant contributors that block it are filled first (depth first, an
explicit stack replacing recursion); segments already in progress count as
unavailable, so cycles terminate. Whatever stays unsolvable receives the fallback
speed. Regions are filled independently: a region sees measured speeds everywhere
but completed speeds only from itself, so the result does not depend on how many
worker threads run the regions.
"""

import time
from collections.abc import Iterable, Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from shared.completion.config import CompletionSettings, get_completion_settings
from shared.completion.objective import CompletionContext, Contributor
from shared.completion.regions import partition_regions
from shared.completion.solver import solve_single_vacancy
from shared.config.logging import get_logger
from shared.correlation.ccf import c_pre, populated_slice
from shared.correlation.lag import LagTable
from shared.exceptions import (
    AllDegenerateError,
    CorrelationError,
    NotCalculableError,
)
from shared.observability.metrics import cells_filled_total, interval_completion_seconds
from shared.roadnet.distance import UpstreamEntry, upstream_set
from shared.roadnet.models import RoadNet
from shared.speed.series import Provenance, SpeedSeries

logger = get_logger(__name__)


@dataclass
class CompletionState:
    """Inputs shared by every solve of one interval."""

    series: SpeedSeries
    lags: LagTable
    upstream: Mapping[str, Sequence[UpstreamEntry]]
    w: int


@dataclass
class IntervalSummary:
    """Cells of one interval by provenance."""

    n: int
    measured: int = 0
    completed: int = 0
    fallback: int = 0
    initialized: int = 0
    seconds: float = 0.0

    @property
    def total(self) -> int:
        return self.measured + self.completed + self.fallback + self.initialized


class IntervalView:
    """
    Read access to a series where interval n carries region-local completions.

    Only ``vector`` is used by the correlation helpers.
    """

    def __init__(self, series: SpeedSeries, n: int, overrides: dict[str, float] | None = None):
        self.series = series
        self.n = n
        self.overrides = overrides if overrides is not None else {}

    def vector(self, segment_id: str, first: int, last: int) -> np.ndarray:
        values = self.series.vector(segment_id, first, last)
        if first <= self.n <= last and segment_id in self.overrides:
            values[self.n - first] = self.overrides[segment_id]
        return values

    def has_value(self, segment_id: str) -> bool:
        """True when X_seg(n) is measured or completed locally."""
        return segment_id in self.overrides or not self.series.is_vacant(segment_id, self.n)


def _slice_available(view: IntervalView, segment_id: str, first: int, last: int) -> bool:
    if first < 1:
        return False
    return not np.isnan(view.vector(segment_id, first, last)).any()


def available_contributors(
    r: str, n: int, state: CompletionState, view: IntervalView | None = None
) -> list[tuple[str, int]]:
    """
    Upstream segments of r whose speeds cover every index the correlations need.

    A contributor with lag k needs X(n-k-w .. n-k); only k = 0 reaches interval n.

    Returns:
        (segment id, k) pairs, vicinity to remote
    """
    view = view or IntervalView(state.series, n)
    found = []
    for entry in state.upstream.get(r, ()):
        k = state.lags.lag(entry.segment_id, r)
        if k is None:
            continue
        if _slice_available(view, entry.segment_id, n - k - state.w, n - k):
            found.append((entry.segment_id, k))
    return found


def is_calculable(
    r: str,
    n: int,
    state: CompletionState,
    settings: CompletionSettings,
    view: IntervalView | None = None,
) -> bool:
    """
    True iff r has its own window history and at least N_min available contributors.
    """
    view = view or IntervalView(state.series, n)
    if not _slice_available(view, r, n - state.w, n - 1):
        return False
    return len(available_contributors(r, n, state, view)) >= settings.n_min


def build_context(
    r: str,
    n: int,
    state: CompletionState,
    settings: CompletionSettings,
    view: IntervalView | None = None,
) -> CompletionContext:
    """
    Completion context of the vacancy X_r(n).

    Contributors with a constant slice in either window are dropped.

    Raises:
        NotCalculableError: If fewer than N_min contributors survive
    """
    view = view or IntervalView(state.series, n)
    w = state.w
    contributors = []
    available = available_contributors(r, n, state, view)
    for u, k in available:
        try:
            pre = c_pre(u, r, n, w, k, view)
        except CorrelationError:
            continue
        y = populated_slice(view, u, n - k - w + 1, n - k)
        if np.ptp(y) == 0.0:
            continue
        contributors.append(Contributor(u, k, pre, y))

    if len(contributors) < settings.n_min:
        raise NotCalculableError(r, len(contributors), settings.n_min)
    history = populated_slice(view, r, n - w + 1, n - 1)
    return CompletionContext(r, n, history, contributors, settings.v_max)


class RegionFiller:
    """Fills the vacancies of one region at interval n."""

    def __init__(
        self,
        state: CompletionState,
        n: int,
        region: Iterable[str],
        settings: CompletionSettings,
    ):
        self.state = state
        self.n = n
        self.region = frozenset(region)
        self.settings = settings
        self.view = IntervalView(state.series, n, {})
        self.done: set[str] = set()
        self.in_progress: set[str] = set()
        self.unsolved: list[str] = []

    def _blocking(self, r: str) -> list[str]:
        """Vacant same-interval contributors of r, vicinity to remote."""
        w = self.state.w
        blocking = []
        for entry in self.state.upstream.get(r, ()):
            u = entry.segment_id
            if u not in self.region or self.view.has_value(u):
                continue
            if self.state.lags.lag(u, r) != 0:
                continue
            if _slice_available(self.view, u, self.n - w, self.n - 1):
                blocking.append(u)
        return blocking

    def _eligible(self, segment_id: str) -> bool:
        return (
            segment_id not in self.done
            and segment_id not in self.in_progress
            and not self.view.has_value(segment_id)
        )

    def _solve(self, r: str) -> None:
        if is_calculable(r, self.n, self.state, self.settings, self.view):
            try:
                ctx = build_context(r, self.n, self.state, self.settings, self.view)
                self.view.overrides[r] = solve_single_vacancy(ctx, self.settings.tolerance)
                return
            except (NotCalculableError, AllDegenerateError):
                pass
        self.unsolved.append(r)

    def fill(self, root: str) -> None:
        """Fill ``root`` and, first, whatever vacant contributors block it."""
        self.in_progress.add(root)
        stack: list[tuple[str, list[str] | None]] = [(root, None)]
        while stack:
            segment_id, pending = stack[-1]
            if pending is None:
                if is_calculable(segment_id, self.n, self.state, self.settings, self.view):
                    self._solve(segment_id)
                    stack.pop()
                    self.in_progress.discard(segment_id)
                    self.done.add(segment_id)
                    continue
                pending = self._blocking(segment_id)
                pending.reverse()
                stack[-1] = (segment_id, pending)

            next_id = None
            while pending:
                candidate = pending.pop()
                if self._eligible(candidate):
                    next_id = candidate
                    break
            if next_id is not None:
                self.in_progress.add(next_id)
                stack.append((next_id, None))
                continue

            self._solve(segment_id)
            stack.pop()
            self.in_progress.discard(segment_id)
            self.done.add(segment_id)

    def run(self) -> dict[str, float]:
        """
        Fill every vacancy of the region.

        Returns:
            Completed speeds keyed by segment id
        """
        for segment_id in sorted(self.region):
            if self._eligible(segment_id):
                self.fill(segment_id)
        return dict(self.view.overrides)


def fallback_value(segment_id: str, n: int, series: SpeedSeries, default_speed: float) -> float:
    """Mean of the segment's measured speeds before interval n, else the default speed."""
    row = series.row(segment_id)
    measured = series.provenance[row, : n - 1] == Provenance.MEASURED
    if not measured.any():
        return default_speed
    return float(series.values[row, : n - 1][measured].mean())


def complete_all(
    n: int,
    state: CompletionState,
    settings: CompletionSettings | None = None,
    regions: Sequence[Iterable[str]] | None = None,
    jobs: int = 1,
) -> IntervalSummary:
    """
    Give every segment a speed for interval n.

    A region sees completions at n only from itself, so the filled values depend on the
    partition: a vacant contributor in another region counts as unavailable even when
    that region completes it. With a single region the fill is the sequential one;
    for a fixed partition the thread count changes nothing.

    Args:
        n: Interval ordinal
        state: Series (history populated, measured cells at n), lags, upstream areas
        settings: Completion settings
        regions: Disjoint segment sets filled independently; one region by default
        jobs: Worker threads for the regions

    Returns:
        Summary of the interval's cells by provenance
    """
    settings = settings or get_completion_settings()
    series = state.series
    started = time.perf_counter()
    summary = IntervalSummary(n=n)
    summary.measured = int(np.count_nonzero(~np.isnan(series.column(n))))

    if regions is None:
        regions = [series.segment_ids]
    fillers = [RegionFiller(state, n, region, settings) for region in regions]
    if jobs > 1 and len(fillers) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(RegionFiller.run, fillers))
    else:
        results = [filler.run() for filler in fillers]

    for completed in results:
        for segment_id in sorted(completed):
            series.set(segment_id, n, completed[segment_id], Provenance.COMPLETED)
            summary.completed += 1

    for segment_id in series.vacant_segments(n):
        value = fallback_value(segment_id, n, series, settings.default_speed)
        series.set(segment_id, n, value, Provenance.FALLBACK)
        summary.fallback += 1

    summary.seconds = time.perf_counter() - started
    interval_completion_seconds.observe(summary.seconds)
    cells_filled_total.labels(provenance=Provenance.COMPLETED.label).inc(summary.completed)
    cells_filled_total.labels(provenance=Provenance.FALLBACK.label).inc(summary.fallback)
    logger.debug(
        "interval_completed",
        n=n,
        measured=summary.measured,
        completed=summary.completed,
        fallback=summary.fallback,
        seconds=round(summary.seconds, 4),
    )
    return summary


def initialize_history(
    series: SpeedSeries, w: int, default_speed: float = 16.7
) -> IntervalSummary:
    """
    Fill vacancies of intervals 1..w from each segment's own measurements there.

    Segments never measured in those intervals get ``default_speed``.

    Returns:
        Summary over the initialized span (n = last initialized interval)
    """
    last = min(w, series.n_intervals)
    summary = IntervalSummary(n=last)
    if last < 1:
        return summary
    block = series.values[:, :last]
    summary.measured = int(np.count_nonzero(~np.isnan(block)))
    for i, segment_id in enumerate(series.segment_ids):
        row = block[i]
        vacant = np.isnan(row)
        if not vacant.any():
            continue
        fill = float(row[~vacant].mean()) if (~vacant).any() else default_speed
        for j in np.flatnonzero(vacant):
            series.set(segment_id, int(j) + 1, fill, Provenance.INITIALIZED)
            summary.initialized += 1
    cells_filled_total.labels(provenance=Provenance.INITIALIZED.label).inc(summary.initialized)
    return summary


@dataclass
class CompletionEngine:
    """
    Interval-by-interval completion over a fixed road net.

    Upstream areas and regions are computed once per net.
    """

    net: RoadNet
    settings: CompletionSettings = field(default_factory=get_completion_settings)
    w: int = 12
    jobs: int = 1
    upstream: dict[str, list[UpstreamEntry]] = field(init=False)
    regions: list[frozenset[str]] = field(init=False)

    def __post_init__(self) -> None:
        self.upstream = {
            r: upstream_set(r, self.settings.d_a, self.net) for r in self.net.segment_ids
        }
        self.regions = partition_regions(self.net, self.settings.region_count)
        logger.info(
            "completion_engine_ready",
            segments=len(self.net),
            pairs=sum(len(v) for v in self.upstream.values()),
            regions=len(self.regions),
            d_a=self.settings.d_a,
        )

    def pairs(self) -> dict[str, list[str]]:
        """Target -> upstream segment ids, for lag estimation."""
        return {r: [e.segment_id for e in entries] for r, entries in self.upstream.items()}

    def state(self, series: SpeedSeries, lags: LagTable) -> CompletionState:
        """Bundle a series and lag table with this engine's upstream areas."""
        return CompletionState(series=series, lags=lags, upstream=self.upstream, w=self.w)

    def initialize(self, series: SpeedSeries) -> IntervalSummary:
        """Initialize intervals 1..w."""
        return initialize_history(series, self.w, self.settings.default_speed)

    def complete_interval(self, series: SpeedSeries, n: int, lags: LagTable) -> IntervalSummary:
        """Complete interval n in place."""
        return complete_all(
            n, self.state(series, lags), self.settings, regions=self.regions, jobs=self.jobs
        )
