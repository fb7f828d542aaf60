"""
Travel speeds of covered segments and the per-segment speed series.
"""

from shared.speed.calculator import (
    build_speed_series,
    pair_speed,
    segment_pair_speeds,
    travel_speed_covered,
)
from shared.speed.io import SPEED_COLUMNS, load_speed_series, read_speed_table, write_speed_table
from shared.speed.series import Provenance, SpeedSeries

__all__ = [
    "SPEED_COLUMNS",
    "Provenance",
    "SpeedSeries",
    "build_speed_series",
    "load_speed_series",
    "pair_speed",
    "read_speed_table",
    "segment_pair_speeds",
    "travel_speed_covered",
    "write_speed_table",
]
