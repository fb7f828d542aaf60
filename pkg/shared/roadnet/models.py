"""
Road net data model.

A road net is a directed graph: every road segment has exactly one entrance and one
exit intersection and is travelled entrance -> exit only. Segments are the edges of
the graph, intersections its vertices.
"""

import math
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx
from shapely.geometry import LineString

from shared.exceptions import DataFormatError, UnknownSegmentError


@dataclass(frozen=True, slots=True)
class Point:
    """Planar location in projected meters."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise DataFormatError(f"Non-finite coordinates ({self.x}, {self.y})")

    def distance_to(self, other: "Point") -> float:
        """Euclidean distance in meters."""
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True, slots=True)
class NetPosition:
    """A place on the net: a segment plus arc-length offset from its entrance."""

    segment_id: str
    offset: float


@dataclass(frozen=True)
class RoadSegment:
    """One directed road segment."""

    id: str
    polyline: tuple[Point, ...]
    entrance: str
    exit: str

    def __post_init__(self) -> None:
        if len(self.polyline) < 2:
            raise DataFormatError(f"Segment {self.id} needs at least two polyline points")
        if self.length <= 0.0:
            raise DataFormatError(f"Segment {self.id} has zero length")

    @cached_property
    def length(self) -> float:
        """Sum of consecutive polyline point distances, meters."""
        return sum(a.distance_to(b) for a, b in zip(self.polyline, self.polyline[1:], strict=False))

    @cached_property
    def line(self) -> LineString:
        """Shapely geometry of the polyline."""
        return LineString([(p.x, p.y) for p in self.polyline])


@dataclass
class RoadNet:
    """
    Immutable directed road net.

    Built once from segments; adjacency and the intersection graph are derived and
    cached, so instances are safe for concurrent reads.
    """

    segments: dict[str, RoadSegment]
    vertices: frozenset[str] = field(init=False)
    adjacency: dict[str, tuple[str, ...]] = field(init=False)
    inbound: dict[str, tuple[str, ...]] = field(init=False)
    ending_at: dict[str, tuple[str, ...]] = field(init=False)
    _distance_cache: dict[str, dict[str, float]] = field(
        default_factory=dict, init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        self.segments = {sid: self.segments[sid] for sid in sorted(self.segments)}
        self.vertices = frozenset(
            v for seg in self.segments.values() for v in (seg.entrance, seg.exit)
        )

        by_entrance: dict[str, list[str]] = {}
        by_exit: dict[str, list[str]] = {}
        for seg in self.segments.values():
            by_entrance.setdefault(seg.entrance, []).append(seg.id)
            by_exit.setdefault(seg.exit, []).append(seg.id)

        self.adjacency = {
            sid: tuple(sorted(by_entrance.get(seg.exit, []))) for sid, seg in self.segments.items()
        }
        self.inbound = {
            sid: tuple(sorted(by_exit.get(seg.entrance, []))) for sid, seg in self.segments.items()
        }
        self.ending_at = {v: tuple(sorted(ids)) for v, ids in by_exit.items()}

    @classmethod
    def from_segments(cls, segments: Iterable[RoadSegment]) -> "RoadNet":
        """
        Build a net from segments, rejecting duplicate ids.

        Args:
            segments: Road segments

        Returns:
            RoadNet

        Raises:
            DataFormatError: If two segments share an id
        """
        table: dict[str, RoadSegment] = {}
        for seg in segments:
            if seg.id in table:
                raise DataFormatError(f"Duplicate segment id: {seg.id}")
            table[seg.id] = seg
        return cls(segments=table)

    def __len__(self) -> int:
        return len(self.segments)

    def __iter__(self) -> Iterator[RoadSegment]:
        return iter(self.segments.values())

    def __contains__(self, segment_id: object) -> bool:
        return segment_id in self.segments

    @property
    def segment_ids(self) -> tuple[str, ...]:
        """Segment ids in ascending order."""
        return tuple(self.segments)

    def segment(self, segment_id: str) -> RoadSegment:
        """
        Look up a segment.

        Raises:
            UnknownSegmentError: If the id is not part of the net
        """
        try:
            return self.segments[segment_id]
        except KeyError as e:
            raise UnknownSegmentError(segment_id) from e

    def outward_neighbors(self, segment_id: str) -> tuple[str, ...]:
        """Segments whose entrance is this segment's exit."""
        self.segment(segment_id)
        return self.adjacency[segment_id]

    def bounding_box(self) -> tuple[float, float, float, float]:
        """(min_x, min_y, max_x, max_y) over all polyline points."""
        xs = [p.x for seg in self for p in seg.polyline]
        ys = [p.y for seg in self for p in seg.polyline]
        return min(xs), min(ys), max(xs), max(ys)

    @cached_property
    def graph(self) -> nx.DiGraph:
        """
        Intersection graph: vertices are intersections, an edge u->v exists when some
        segment enters at u and exits at v, weighted by the shortest such segment.
        """
        graph = nx.DiGraph()
        graph.add_nodes_from(sorted(self.vertices))
        for seg in self.segments.values():
            current = graph.get_edge_data(seg.entrance, seg.exit)
            if current is None or seg.length < current["length"]:
                graph.add_edge(seg.entrance, seg.exit, length=seg.length)
        return graph

    @cached_property
    def reverse_graph(self) -> nx.DiGraph:
        """Intersection graph with every edge reversed (for upstream searches)."""
        return self.graph.reverse(copy=True)

    def vertex_distances(self, source: str) -> dict[str, float]:
        """
        Shortest lawful path lengths from an intersection to every reachable one.

        Results are memoized per source; concurrent callers may compute the same entry
        twice but always store identical values.
        """
        cached = self._distance_cache.get(source)
        if cached is None:
            lengths = nx.single_source_dijkstra_path_length(self.graph, source, weight="length")
            cached = dict(lengths)
            self._distance_cache[source] = cached
        return cached
