"""
Windowed cross-correlation and vehicle-tracking lag estimation.
"""

from shared.correlation.ccf import SeriesView, c_now, c_pre, cross_correlation, populated_slice
from shared.correlation.config import CorrelationSettings, get_correlation_settings
from shared.correlation.lag import (
    LagEntry,
    LagEstimator,
    LagTable,
    VehicleTrack,
    collect_travel_times,
    estimate_lag,
    free_flow_lag,
    index_traces,
    lag_comparison,
    lag_from_travel_times,
    stationarity_report,
)

__all__ = [
    "CorrelationSettings",
    "LagEntry",
    "LagEstimator",
    "LagTable",
    "SeriesView",
    "VehicleTrack",
    "c_now",
    "c_pre",
    "collect_travel_times",
    "cross_correlation",
    "estimate_lag",
    "free_flow_lag",
    "get_correlation_settings",
    "index_traces",
    "lag_comparison",
    "lag_from_travel_times",
    "populated_slice",
    "stationarity_report",
]
