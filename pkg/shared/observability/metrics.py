"""
Prometheus metrics for the estimation pipeline.

Counters and histograms live on a dedicated registry so repeated imports in tests
and library use never collide with a host application's default registry.
"""

from prometheus_client import CollectorRegistry, Counter, Histogram, generate_latest

REGISTRY = CollectorRegistry()

# Ingestion Metrics
records_parsed_total = Counter(
    "stc_records_parsed_total",
    "Total crowdsensed records parsed",
    ["status"],
    registry=REGISTRY,
)


# Map Matching Metrics
points_matched_total = Counter(
    "stc_points_matched_total",
    "Total GPS points processed by the map matcher",
    ["result", "strategy"],
    registry=REGISTRY,
)


# Completion Metrics
cells_filled_total = Counter(
    "stc_cells_filled_total",
    "Total (segment, interval) cells populated",
    ["provenance"],
    registry=REGISTRY,
)

interval_completion_seconds = Histogram(
    "stc_interval_completion_seconds",
    "Wall time to complete all vacancies of one interval",
    buckets=(0.01, 0.05, 0.1, 0.25, 0.5, 1.0, 2.5, 5.0, 10.0, 30.0),
    registry=REGISTRY,
)

solver_refinements_total = Counter(
    "stc_solver_refinements_total",
    "Single-vacancy solves by refinement outcome",
    ["outcome"],
    registry=REGISTRY,
)


# Lag Estimation Metrics
lag_entries_total = Counter(
    "stc_lag_entries_total",
    "Lag table entries by source",
    ["source"],
    registry=REGISTRY,
)


def get_metrics() -> bytes:
    """
    Get current metrics in Prometheus format.

    Returns:
        Metrics in Prometheus text format
    """
    return generate_latest(REGISTRY)
