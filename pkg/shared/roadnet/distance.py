"""
Network distances over the directed road net.

All distances respect travel direction: a vehicle leaves a segment through its exit
and enters the next one through its entrance. The intersection graph is searched with
networkx's Dijkstra (uniform-cost search on segment lengths).
"""

from dataclasses import dataclass

import networkx as nx

from shared.exceptions import UnreachableError
from shared.roadnet.models import NetPosition, RoadNet


@dataclass(frozen=True, slots=True)
class UpstreamEntry:
    """An upstream segment of some target together with its distance measures."""

    segment_id: str
    distance: float
    intersections: int

    @property
    def combined(self) -> float:
        """Dist(u, r) = network distance x intersection distance."""
        return self.distance * self.intersections


def vertex_distance(net: RoadNet, source: str, target: str) -> float:
    """
    Shortest lawful path length between two intersections.

    Raises:
        UnreachableError: If the target cannot be reached
    """
    if source == target:
        return 0.0
    lengths = net.vertex_distances(source)
    if target not in lengths:
        raise UnreachableError(source, target)
    return lengths[target]


def network_distance(p1: NetPosition, p2: NetPosition, net: RoadNet) -> float:
    """
    Length of the shortest lawful driving path from p1 to p2.

    Same-segment positions with p2 downstream of p1 are separated by the offset
    difference; otherwise the path is the remainder of p1's segment, the shortest
    exit -> entrance intersection path, and the prefix of p2's segment.

    Args:
        p1: Origin position
        p2: Destination position
        net: Road net

    Returns:
        Distance in meters

    Raises:
        UnreachableError: When no directed path exists
    """
    seg1 = net.segment(p1.segment_id)
    seg2 = net.segment(p2.segment_id)

    if seg1.id == seg2.id and p2.offset >= p1.offset:
        return p2.offset - p1.offset

    try:
        between = vertex_distance(net, seg1.exit, seg2.entrance)
    except UnreachableError as e:
        raise UnreachableError(seg1.id, seg2.id) from e
    return (seg1.length - p1.offset) + between + p2.offset


def cp_distance(u: str, r: str, net: RoadNet) -> float:
    """
    Network distance between the central points of two segments.

    Raises:
        UnreachableError: When r cannot be reached from u
    """
    seg_u = net.segment(u)
    seg_r = net.segment(r)
    return network_distance(
        NetPosition(u, seg_u.length / 2.0), NetPosition(r, seg_r.length / 2.0), net
    )


def intersection_distance(u: str, r: str, net: RoadNet) -> int:
    """
    Number of intersections on the shortest lawful path from cp(u) to cp(r).

    The path leaves u through its exit and reaches r through its entrance, so a
    segment feeding r directly is one intersection away.

    Args:
        u: Origin segment id
        r: Destination segment id
        net: Road net

    Returns:
        Intersection count

    Raises:
        UnreachableError: When r cannot be reached from u
    """
    seg_u = net.segment(u)
    seg_r = net.segment(r)
    if seg_u.exit == seg_r.entrance:
        return 1
    try:
        path = nx.dijkstra_path(net.graph, seg_u.exit, seg_r.entrance, weight="length")
    except (nx.NetworkXNoPath, nx.NodeNotFound) as e:
        raise UnreachableError(u, r) from e
    return len(path)


def upstream_set(r: str, d_a: float, net: RoadNet) -> list[UpstreamEntry]:
    """
    Upstream segments of r within the area bounded by Dist(u, r) <= d_a.

    A reverse Dijkstra from r's entrance backtracks along inbound intersections;
    since Dist is at least the network distance, the search is cut off at d_a.

    Args:
        r: Target segment id
        d_a: Threshold on network distance x intersection distance
        net: Road net

    Returns:
        Entries ordered from vicinity to remote (Dist ascending, ties by segment id);
        empty when r has no qualifying upstream segment
    """
    if d_a <= 0:
        raise ValueError("d_a must be positive")

    target = net.segment(r)
    half_r = target.length / 2.0
    lengths, paths = nx.single_source_dijkstra(
        net.reverse_graph, target.entrance, cutoff=d_a, weight="length"
    )

    entries: list[UpstreamEntry] = []
    for vertex, to_entrance in lengths.items():
        hops = len(paths[vertex])
        for seg_id in net.ending_at.get(vertex, ()):
            if seg_id == r:
                continue
            seg = net.segment(seg_id)
            distance = seg.length / 2.0 + to_entrance + half_r
            entry = UpstreamEntry(seg.id, distance, hops)
            if entry.combined <= d_a:
                entries.append(entry)

    entries.sort(key=lambda e: (e.combined, e.segment_id))
    return entries
