"""
Geometric map matching with vehicle-tracking candidate narrowing.

When a vehicle was matched recently, only its last segment and the outward neighbors
reachable within ``max_depth`` levels are considered; otherwise candidates come from
the grid cell of the point and its 8 neighbors. The nearest candidate wins if it is
within D_min, ties broken by ascending segment id.
"""

import math
from collections import defaultdict
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor

from shared.config.logging import get_logger
from shared.ingest.records import Record
from shared.mapmatch.config import MapMatchSettings, get_mapmatch_settings
from shared.mapmatch.grid import GridIndex, build_grid_index
from shared.mapmatch.models import MatchedPoint, MatchResult, Outlier, VehicleState
from shared.observability.metrics import points_matched_total
from shared.roadnet.geometry import project_point
from shared.roadnet.models import Point, RoadNet

logger = get_logger(__name__)


def tracking_candidates(net: RoadNet, last_segment: str, max_depth: int) -> tuple[str, ...]:
    """
    Last segment plus outward neighbors expanded ``max_depth`` levels.

    The first level holds the first-class candidates, the second level their
    outward neighbors, and so on.
    """
    found = {last_segment}
    frontier = [last_segment]
    for _ in range(max_depth):
        next_frontier: list[str] = []
        for seg_id in frontier:
            for neighbor in net.adjacency[seg_id]:
                if neighbor not in found:
                    found.add(neighbor)
                    next_frontier.append(neighbor)
        frontier = next_frontier
    return tuple(sorted(found))


def _nearest(
    p: Point, candidates: Sequence[str], net: RoadNet
) -> tuple[str | None, float, float]:
    best_id: str | None = None
    best_distance = math.inf
    best_offset = 0.0
    for seg_id in candidates:
        distance, offset = project_point(net.segment(seg_id), p)
        # candidates arrive in ascending id order, so strict < keeps the lowest id on ties
        if distance < best_distance:
            best_id, best_distance, best_offset = seg_id, distance, offset
    return best_id, best_distance, best_offset


def match_point(
    p: Point,
    t: float,
    state: VehicleState,
    index: GridIndex,
    net: RoadNet,
    d_min: float,
    max_depth: int,
    gap_seconds: float = 120.0,
) -> MatchResult | Outlier:
    """
    Snap one GPS point to a segment.

    Args:
        p: Projected point
        t: Timestamp in seconds
        state: Vehicle tracking state (not modified)
        index: Grid index
        net: Road net
        d_min: Outlier distance in meters
        max_depth: Outward-neighbor expansion depth for tracking
        gap_seconds: Largest gap for which tracking applies

    Returns:
        MatchResult, or Outlier when no candidate lies within d_min
    """
    if t < state.last_timestamp:
        raise ValueError(f"Timestamps of {state.vehicle_id} must not decrease")

    nearest_seen = math.inf
    if state.last_segment is not None and t - state.last_timestamp < gap_seconds:
        candidates = tracking_candidates(net, state.last_segment, max_depth)
        seg_id, distance, offset = _nearest(p, candidates, net)
        if seg_id is not None and distance <= d_min:
            return MatchResult(seg_id, distance, offset, "tracking")
        nearest_seen = distance

    seg_id, distance, offset = _nearest(p, index.neighborhood(p), net)
    if seg_id is not None and distance <= d_min:
        return MatchResult(seg_id, distance, offset, "grid")
    return Outlier(min(distance, nearest_seen))


class MapMatcher:
    """
    Batch map matcher.

    Vehicles are independent, so their traces are matched in parallel; each worker
    owns the VehicleState of its vehicles.
    """

    def __init__(
        self,
        net: RoadNet,
        settings: MapMatchSettings | None = None,
        jobs: int = 1,
    ):
        """
        Initialize matcher and build the grid index.

        Args:
            net: Road net
            settings: Map matching settings
            jobs: Worker threads for vehicle-partitioned matching
        """
        self.net = net
        self.settings = settings or get_mapmatch_settings()
        self.jobs = jobs
        self.index = build_grid_index(net, self.settings.cell_size, self.settings.d_min)
        logger.info(
            "grid_index_built",
            cells=len(self.index.cells),
            cell_size=self.settings.cell_size,
            d_min=self.settings.d_min,
        )

    def match_trace(self, vehicle_id: str, records: Sequence[Record]) -> list[MatchedPoint]:
        """
        Match one vehicle's records in time order, dropping outliers.

        Args:
            vehicle_id: Vehicle id
            records: Records of that vehicle

        Returns:
            Matched points in time order
        """
        state = VehicleState(vehicle_id)
        matched: list[MatchedPoint] = []
        outliers = 0
        for rec in sorted(records, key=lambda r: r.timestamp):
            result = match_point(
                rec.position,
                rec.timestamp,
                state,
                self.index,
                self.net,
                self.settings.d_min,
                self.settings.max_depth,
                self.settings.tracking_gap_seconds,
            )
            if isinstance(result, Outlier):
                outliers += 1
                continue
            points_matched_total.labels(result="matched", strategy=result.strategy).inc()
            state.last_segment = result.segment_id
            state.last_timestamp = rec.timestamp
            matched.append(
                MatchedPoint(vehicle_id, rec.timestamp, result.segment_id, result.offset, rec.speed)
            )
        if outliers:
            points_matched_total.labels(result="outlier", strategy="none").inc(outliers)
        return matched

    def match_records(self, records: Iterable[Record]) -> dict[str, list[MatchedPoint]]:
        """
        Match all records, grouped by vehicle.

        Args:
            records: Parsed records in any order

        Returns:
            Mapping vehicle id -> matched trace, vehicles in ascending id order
        """
        by_vehicle: dict[str, list[Record]] = defaultdict(list)
        for rec in records:
            by_vehicle[rec.vehicle_id].append(rec)
        vehicles = sorted(by_vehicle)

        if self.jobs > 1 and len(vehicles) > 1:
            with ThreadPoolExecutor(max_workers=self.jobs) as pool:
                traces = list(pool.map(lambda v: self.match_trace(v, by_vehicle[v]), vehicles))
        else:
            traces = [self.match_trace(v, by_vehicle[v]) for v in vehicles]

        result = dict(zip(vehicles, traces, strict=True))
        total_in = sum(len(recs) for recs in by_vehicle.values())
        total_out = sum(len(trace) for trace in traces)
        logger.info(
            "records_matched",
            vehicles=len(vehicles),
            matched=total_out,
            outliers=total_in - total_out,
        )
        return result


def flatten_traces(traces: dict[str, list[MatchedPoint]]) -> list[MatchedPoint]:
    """All matched points ordered by vehicle then timestamp."""
    return [point for vehicle in sorted(traces) for point in traces[vehicle]]
