"""
Map matching: grid index, outlier rejection and vehicle-tracking candidates.
"""

from shared.mapmatch.config import MapMatchSettings, get_mapmatch_settings
from shared.mapmatch.grid import GridIndex, build_grid_index
from shared.mapmatch.io import read_matched, traces_to_frame, write_matched
from shared.mapmatch.matcher import MapMatcher, flatten_traces, match_point, tracking_candidates
from shared.mapmatch.models import MatchedPoint, MatchResult, Outlier, VehicleState

__all__ = [
    "GridIndex",
    "MapMatchSettings",
    "MapMatcher",
    "MatchResult",
    "MatchedPoint",
    "Outlier",
    "VehicleState",
    "build_grid_index",
    "flatten_traces",
    "get_mapmatch_settings",
    "match_point",
    "read_matched",
    "traces_to_frame",
    "tracking_candidates",
    "write_matched",
]
