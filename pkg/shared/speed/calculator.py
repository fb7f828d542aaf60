"""
Composite travel speeds of covered segments.

A covered segment's speed in interval j is the plain mean of two kinds of samples:
trajectory-average speeds of consecutive matched points whose later point lies on
the segment in j, and the instant speeds of the matched records on the segment in j.
"""

from collections import defaultdict
from collections.abc import Mapping, Sequence

from shared.config.logging import get_logger
from shared.exceptions import NotCoveredError, UnreachableError
from shared.ingest.coverage import CoverageTable, is_covered
from shared.ingest.intervals import IntervalIndex
from shared.mapmatch.models import MatchedPoint
from shared.observability.metrics import cells_filled_total
from shared.roadnet.distance import network_distance
from shared.roadnet.models import RoadNet
from shared.speed.series import Provenance, SpeedSeries

logger = get_logger(__name__)

Traces = Mapping[str, Sequence[MatchedPoint]]


def pair_speed(a: MatchedPoint, b: MatchedPoint, net: RoadNet) -> float | None:
    """
    Average speed between two consecutive points of one vehicle.

    Returns:
        Speed in m/s, or None when the pair carries no usable measurement
    """
    dt = b.timestamp - a.timestamp
    if dt <= 0:
        return None
    try:
        distance = network_distance(a.position, b.position, net)
    except UnreachableError:
        return None
    return distance / dt


def segment_pair_speeds(
    trace: Sequence[MatchedPoint], j: int, index: IntervalIndex, net: RoadNet
) -> list[float]:
    """
    Trajectory-average speeds of one vehicle whose later point falls in interval j.

    The earlier point of a pair may precede the interval.

    Args:
        trace: Time-ordered matched points of one vehicle
        j: Interval ordinal
        index: Interval index
        net: Road net

    Returns:
        Speeds in m/s, in trace order
    """
    speeds: list[float] = []
    for a, b in zip(trace, trace[1:], strict=False):
        if index.interval_of(b.timestamp) != j:
            continue
        speed = pair_speed(a, b, net)
        if speed is not None:
            speeds.append(speed)
    return speeds


def travel_speed_covered(
    segment_id: str,
    j: int,
    traces: Traces,
    coverage: CoverageTable,
    index: IntervalIndex,
    net: RoadNet,
) -> float:
    """
    Composite travel speed of a covered segment.

    Args:
        segment_id: Segment id
        j: Interval ordinal
        traces: Matched traces keyed by vehicle
        coverage: Coverage table
        index: Interval index
        net: Road net

    Returns:
        Mean of arrival-attributed pair speeds and instant speeds in m/s

    Raises:
        NotCoveredError: If the segment is not covered in j
    """
    if not is_covered(segment_id, j, coverage):
        raise NotCoveredError(segment_id, j)

    samples: list[float] = []
    for vehicle in sorted(traces):
        trace = traces[vehicle]
        for pos, point in enumerate(trace):
            if point.segment_id != segment_id or index.interval_of(point.timestamp) != j:
                continue
            samples.append(point.speed)
            if pos > 0:
                speed = pair_speed(trace[pos - 1], point, net)
                if speed is not None:
                    samples.append(speed)
    return sum(samples) / len(samples)


def build_speed_series(
    traces: Traces,
    net: RoadNet,
    index: IntervalIndex,
    nthr: int,
    n_intervals: int | None = None,
) -> tuple[SpeedSeries, CoverageTable]:
    """
    Measured speed series and coverage table for every interval in one pass.

    Args:
        traces: Matched traces keyed by vehicle
        net: Road net
        index: Interval index
        nthr: Coverage threshold N_thr
        n_intervals: Number of intervals; defaults to the span of the traces

    Returns:
        (series with MEASURED cells for covered segments, coverage table)
    """
    if n_intervals is None:
        last = max((p.timestamp for trace in traces.values() for p in trace), default=None)
        n_intervals = 0 if last is None else (index.interval_of(last) or 0)

    sums: dict[tuple[str, int], float] = defaultdict(float)
    counts: dict[tuple[str, int], int] = defaultdict(int)
    observations: list[tuple[str, float]] = []

    for vehicle in sorted(traces):
        trace = traces[vehicle]
        for pos, point in enumerate(trace):
            j = index.interval_of(point.timestamp)
            if j is None or j > n_intervals:
                continue
            observations.append((point.segment_id, point.timestamp))
            key = (point.segment_id, j)
            sums[key] += point.speed
            counts[key] += 1
            if pos > 0:
                speed = pair_speed(trace[pos - 1], point, net)
                if speed is not None:
                    sums[key] += speed
                    counts[key] += 1

    coverage = CoverageTable.build(observations, index, net.segment_ids, n_intervals, nthr)
    series = SpeedSeries(net.segment_ids, n_intervals)
    measured = 0
    for (segment_id, j), total in sorted(sums.items()):
        if coverage.count(segment_id, j) >= nthr:
            series.set(segment_id, j, total / counts[(segment_id, j)], Provenance.MEASURED)
            measured += 1

    cells_filled_total.labels(provenance=Provenance.MEASURED.label).inc(measured)
    logger.info(
        "speed_series_built",
        segments=len(net),
        intervals=n_intervals,
        measured_cells=measured,
        observations=len(observations),
    )
    return series, coverage
