"""
Self-adaptive time lagging factors from vehicle tracking.

For every vehicle seen on r during the window, the record on r nearest cp(r) and the
record of its latest preceding pass over u nearest cp(u) give an observed average
speed; the cp-to-cp distance divided by that speed is the vehicle's travel time,
and k(u, r) is the floor of the mean travel time over T.
"""

import math
from bisect import bisect_left
from collections import defaultdict
from collections.abc import Collection, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
import pandas as pd

from shared.config.logging import get_logger
from shared.correlation.ccf import SeriesView, cross_correlation, populated_slice
from shared.correlation.config import CorrelationSettings, get_correlation_settings
from shared.exceptions import (
    DegenerateSeriesError,
    InsufficientHistoryError,
    NoTraversalsError,
    UnreachableError,
    VacantEntryError,
)
from shared.ingest.intervals import IntervalIndex
from shared.mapmatch.models import MatchedPoint
from shared.observability.metrics import lag_entries_total
from shared.roadnet.distance import cp_distance, network_distance
from shared.roadnet.models import RoadNet
from shared.speed.series import SpeedSeries

logger = get_logger(__name__)

LagSource = Literal["tracked", "previous", "free_flow"]

Traces = Mapping[str, Sequence[MatchedPoint]]

# floor() guard against travel times landing a hair under a whole interval
_FLOOR_EPS = 1e-9


@dataclass(frozen=True, slots=True)
class LagEntry:
    """k(u, r) for one window, with its sample size and origin."""

    upstream: str
    target: str
    k: int
    samples: int
    source: LagSource


@dataclass
class LagTable:
    """Lag factors of all estimable pairs for the window ending at ``window_end``."""

    window_end: int
    w: int
    entries: dict[tuple[str, str], LagEntry] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, pair: object) -> bool:
        return pair in self.entries

    def __iter__(self) -> Iterator[LagEntry]:
        return iter(self.entries[key] for key in sorted(self.entries))

    def get(self, upstream: str, target: str) -> LagEntry | None:
        """Entry for a pair, None when inestimable."""
        return self.entries.get((upstream, target))

    def lag(self, upstream: str, target: str) -> int | None:
        """k(u, r), None when inestimable."""
        entry = self.entries.get((upstream, target))
        return None if entry is None else entry.k

    def add(self, entry: LagEntry) -> None:
        """Insert or replace an entry."""
        self.entries[(entry.upstream, entry.target)] = entry

    def to_frame(self) -> pd.DataFrame:
        """Table with columns u, r, k, samples, source ordered by (u, r)."""
        rows = [(e.upstream, e.target, e.k, e.samples, e.source) for e in self]
        return pd.DataFrame(rows, columns=["u", "r", "k", "samples", "source"])


def lag_from_travel_times(travel_times: Sequence[float], interval_seconds: float) -> int:
    """floor(mean travel time / T)."""
    mean = sum(travel_times) / len(travel_times)
    return max(0, math.floor(mean / interval_seconds + _FLOOR_EPS))


def free_flow_lag(distance: float, free_flow_speed: float, interval_seconds: float) -> int:
    """Lag of a pair whose traffic moves at free-flow speed."""
    return max(0, math.floor(distance / (free_flow_speed * interval_seconds) + _FLOOR_EPS))


def _centre_deviation(point: MatchedPoint, net: RoadNet) -> float:
    return abs(point.offset - net.segment(point.segment_id).length / 2.0)


def _window_span(index: IntervalIndex, window_end: int, w: int) -> tuple[float, float]:
    first = max(1, window_end - w + 1)
    return index.bounds(first)[0], index.bounds(window_end)[1]


class VehicleTrack:
    """One vehicle's trace with per-segment positions and a timestamp index."""

    def __init__(self, trace: Sequence[MatchedPoint]):
        self.trace = trace
        self.timestamps = [p.timestamp for p in trace]
        self.positions: dict[str, list[int]] = defaultdict(list)
        for pos, point in enumerate(trace):
            self.positions[point.segment_id].append(pos)

    def span(self, begin: float, end: float) -> range:
        """Positions with begin <= timestamp < end."""
        return range(bisect_left(self.timestamps, begin), bisect_left(self.timestamps, end))


def index_traces(traces: Traces) -> list[VehicleTrack]:
    """Tracks of all vehicles in ascending vehicle id order."""
    return [VehicleTrack(traces[vehicle]) for vehicle in sorted(traces)]


# Sample of one vehicle: (position of the r record, upstream id) -> travel time or None
SampleCache = dict[tuple[int, str], float | None]


def _traversal_time(
    track: VehicleTrack,
    p2: int,
    u: str,
    r: str,
    net: RoadNet,
    lookback_seconds: float,
    cp_dist: dict[tuple[str, str], float],
) -> float | None:
    """Travel time cp(u) -> cp(r) of the latest pass over u before record p2, if usable."""
    trace = track.trace
    s2 = trace[p2]
    u_positions = track.positions.get(u)
    if not u_positions:
        return None
    q = bisect_left(u_positions, p2) - 1
    if q < 0:
        return None
    last = u_positions[q]
    first = last
    while first > 0 and trace[first - 1].segment_id == u:
        first -= 1
    run = [
        p
        for p in range(first, last + 1)
        if trace[p].timestamp >= s2.timestamp - lookback_seconds
    ]
    if not run:
        return None
    # nearest cp(u), ties to the latest record
    p1 = min(run, key=lambda p: (_centre_deviation(trace[p], net), -p))
    s1 = trace[p1]

    dt = s2.timestamp - s1.timestamp
    if dt <= 0:
        return None
    try:
        travelled = network_distance(s1.position, s2.position, net)
        if (u, r) not in cp_dist:
            cp_dist[(u, r)] = cp_distance(u, r, net)
    except UnreachableError:
        return None
    if travelled <= 0:
        return None
    return cp_dist[(u, r)] * dt / travelled


def collect_travel_times(
    pairs: Mapping[str, Collection[str]],
    begin: float,
    end: float,
    tracks: Sequence[VehicleTrack],
    net: RoadNet,
    lookback_seconds: float,
    distances: dict[tuple[str, str], float] | None = None,
    samples: Sequence[SampleCache] | None = None,
) -> dict[tuple[str, str], list[float]]:
    """
    Per-vehicle travel times of tracked (u, r) traversals.

    Args:
        pairs: Target segment r -> upstream segments u to track
        begin: Window start (s), inclusive
        end: Window end (s), exclusive
        tracks: Indexed vehicle traces
        net: Road net
        lookback_seconds: Oldest admissible pass over u relative to the visit of r
        distances: cp-to-cp distance cache, filled as pairs are met
        samples: One cache per track of already computed traversals, filled as met

    Returns:
        (u, r) -> travel times in seconds, one per usable vehicle, in track order
    """
    cp_dist = distances if distances is not None else {}
    times: dict[tuple[str, str], list[float]] = defaultdict(list)

    for t, track in enumerate(tracks):
        trace = track.trace
        cache = samples[t] if samples is not None else {}
        visits: dict[str, list[int]] = defaultdict(list)
        for p in track.span(begin, end):
            if trace[p].segment_id in pairs:
                visits[trace[p].segment_id].append(p)

        for r, in_window in visits.items():
            # nearest cp(r), ties to the earliest record
            p2 = min(in_window, key=lambda p: (_centre_deviation(trace[p], net), p))

            for u in pairs[r]:
                if u == r:
                    continue
                key = (p2, u)
                if key not in cache:
                    cache[key] = _traversal_time(track, p2, u, r, net, lookback_seconds, cp_dist)
                travel = cache[key]
                if travel is not None:
                    times[(u, r)].append(travel)
    return dict(times)


def estimate_lag(
    u: str,
    r: str,
    window_end: int,
    w: int,
    traces: Traces,
    net: RoadNet,
    index: IntervalIndex,
    lookback_seconds: float = 1800.0,
) -> int:
    """
    Estimate k(u, r) for the window ending at ``window_end``.

    Args:
        u: Upstream segment id
        r: Target segment id
        window_end: Last interval of the window
        w: Window length in intervals
        traces: Matched traces keyed by vehicle
        net: Road net
        index: Interval index (supplies T)
        lookback_seconds: Oldest admissible pass over u

    Returns:
        Lag factor k >= 0

    Raises:
        NoTraversalsError: If no vehicle seen on r in the window came from u
    """
    begin, end = _window_span(index, window_end, w)
    times = collect_travel_times(
        {r: (u,)}, begin, end, index_traces(traces), net, lookback_seconds
    )
    if not times.get((u, r)):
        raise NoTraversalsError(u, r)
    return lag_from_travel_times(times[(u, r)], index.interval_seconds)


class LagEstimator:
    """
    Builds complete lag tables window by window.

    Pairs without traversals reuse the previous window's lag, else the free-flow lag.
    Traversal samples are kept per vehicle between calls, so consecutive windows only
    compute the visits that entered the window; samples that left it are dropped.
    """

    def __init__(
        self,
        net: RoadNet,
        traces: Traces,
        index: IntervalIndex,
        settings: CorrelationSettings | None = None,
        w: int | None = None,
    ):
        """
        Initialize estimator.

        Args:
            net: Road net
            traces: Matched traces keyed by vehicle
            index: Interval index
            settings: Correlation settings
            w: Window length; defaults to settings.window
        """
        self.net = net
        self.tracks = index_traces(traces)
        self.index = index
        self.settings = settings or get_correlation_settings()
        self.w = w or self.settings.window
        self._cp_dist: dict[tuple[str, str], float] = {}
        self._samples: list[SampleCache] = [{} for _ in self.tracks]

    def _distance(self, u: str, r: str) -> float:
        if (u, r) not in self._cp_dist:
            self._cp_dist[(u, r)] = cp_distance(u, r, self.net)
        return self._cp_dist[(u, r)]

    def _evict(self, begin: float) -> None:
        """Drop samples whose visit of r lies before the window start."""
        for track, cache in zip(self.tracks, self._samples):
            first = bisect_left(track.timestamps, begin)
            for key in [key for key in cache if key[0] < first]:
                del cache[key]

    def build(
        self,
        window_end: int,
        pairs: Mapping[str, Collection[str]],
        previous: LagTable | None = None,
    ) -> LagTable:
        """
        Lag table for every requested pair.

        Args:
            window_end: Last interval of the window
            pairs: Target r -> upstream segments u
            previous: Table of the preceding window, for fallback

        Returns:
            LagTable; pairs with no directed path are absent
        """
        begin, end = _window_span(self.index, window_end, self.w)
        times = collect_travel_times(
            pairs,
            begin,
            end,
            self.tracks,
            self.net,
            self.settings.lookback_seconds,
            self._cp_dist,
            self._samples,
        )
        self._evict(begin)
        T = self.index.interval_seconds
        table = LagTable(window_end=window_end, w=self.w)
        sources: dict[str, int] = defaultdict(int)

        for r in sorted(pairs):
            for u in sorted(pairs[r]):
                if u == r:
                    continue
                samples = times.get((u, r))
                prior = previous.get(u, r) if previous is not None else None
                if samples:
                    k = lag_from_travel_times(samples, T)
                    entry = LagEntry(u, r, k, len(samples), "tracked")
                elif prior is not None:
                    entry = LagEntry(u, r, prior.k, 0, "previous")
                else:
                    try:
                        distance = self._distance(u, r)
                    except UnreachableError:
                        continue
                    k = free_flow_lag(distance, self.settings.free_flow_speed, T)
                    entry = LagEntry(u, r, k, 0, "free_flow")
                table.add(entry)
                sources[entry.source] += 1

        for source, count in sources.items():
            lag_entries_total.labels(source=source).inc(count)
        logger.debug("lag_table_built", window_end=window_end, entries=len(table), **sources)
        return table


def stationarity_report(series: SpeedSeries, w_values: Sequence[int]) -> pd.DataFrame:
    """
    Per-window speed standard deviation for a range of window lengths.

    Only fully populated windows contribute.

    Returns:
        DataFrame with columns w, windows, mean_std, median_std
    """
    rows = []
    for w in w_values:
        if w < 2 or w > series.n_intervals:
            rows.append((w, 0, np.nan, np.nan))
            continue
        windows = np.lib.stride_tricks.sliding_window_view(series.values, w, axis=1)
        stds = windows.std(axis=-1, ddof=1).ravel()
        stds = stds[~np.isnan(stds)]
        if stds.size == 0:
            rows.append((w, 0, np.nan, np.nan))
        else:
            rows.append((w, int(stds.size), float(stds.mean()), float(np.median(stds))))
    return pd.DataFrame(rows, columns=["w", "windows", "mean_std", "median_std"])


def _lagged_correlation(series: SeriesView, u: str, r: str, n: int, w: int, k: int) -> float:
    """Correlation of X_u(n-k-w+1 .. n-k) with X_r(n-w+1 .. n); NaN when not computable."""
    try:
        x = populated_slice(series, u, n - k - w + 1, n - k)
        y = populated_slice(series, r, n - w + 1, n)
        return cross_correlation(x, y)
    except (DegenerateSeriesError, InsufficientHistoryError, VacantEntryError):
        return np.nan


def lag_comparison(
    series: SeriesView, table: LagTable, fixed_k: Sequence[int] = tuple(range(6))
) -> pd.DataFrame:
    """
    Correlation of every pair at its table lag against a set of fixed lags.

    Each pair is scored over the table's window: the target's last w intervals against
    the upstream slice shifted by k. Slices with vacancies, too little history or zero
    spread score NaN.

    Args:
        series: Populated speed series, typically a completed run
        table: Lag table of one window
        fixed_k: Fixed lags to compare with

    Returns:
        DataFrame with columns u, r, k, source, ccf and one ``ccf_k<j>`` per fixed lag
    """
    n, w = table.window_end, table.w
    fixed = [int(k) for k in fixed_k]
    if any(k < 0 for k in fixed):
        raise ValueError(f"Fixed lags must be non-negative, got {fixed}")

    rows = []
    for entry in table:
        u, r = entry.upstream, entry.target
        rows.append(
            (u, r, entry.k, entry.source, _lagged_correlation(series, u, r, n, w, entry.k))
            + tuple(_lagged_correlation(series, u, r, n, w, k) for k in fixed)
        )
    columns = ["u", "r", "k", "source", "ccf"] + [f"ccf_k{k}" for k in fixed]
    return pd.DataFrame(rows, columns=columns)
