"""
Spatial partition of the road net into similarly sized regions.
"""

from shared.roadnet.geometry import central_point
from shared.roadnet.models import RoadNet


def _split(ids: list[str], coords: dict[str, tuple[float, float]], axis: int) -> list[list[str]]:
    ordered = sorted(ids, key=lambda sid: (coords[sid][axis], coords[sid][1 - axis], sid))
    half = len(ordered) // 2
    return [ordered[:half], ordered[half:]]


def partition_regions(net: RoadNet, region_count: int) -> list[frozenset[str]]:
    """
    Disjoint, exhaustive regions by repeated quadrisection.

    The most populous region is cut at the median central-point x and then each half
    at its median y, giving four quarters; when fewer than three more regions are
    needed the cut is a single median split along the region's wider side.

    Args:
        net: Road net
        region_count: Desired number of regions (>= 1)

    Returns:
        Regions ordered by their smallest segment id; fewer than requested only when
        the net has fewer segments than regions
    """
    if region_count < 1:
        raise ValueError("region_count must be at least 1")

    coords = {seg.id: (central_point(seg).x, central_point(seg).y) for seg in net}
    regions: list[list[str]] = [sorted(coords)]

    while len(regions) < region_count:
        largest = max(range(len(regions)), key=lambda i: (len(regions[i]), -i))
        ids = regions[largest]
        if len(ids) < 2:
            break
        if region_count - len(regions) >= 3 and len(ids) >= 4:
            parts = [q for half in _split(ids, coords, 0) for q in _split(half, coords, 1)]
        else:
            xs = [coords[sid][0] for sid in ids]
            ys = [coords[sid][1] for sid in ids]
            axis = 0 if max(xs) - min(xs) >= max(ys) - min(ys) else 1
            parts = _split(ids, coords, axis)
        regions[largest : largest + 1] = [p for p in parts if p]

    return sorted((frozenset(r) for r in regions), key=min)
