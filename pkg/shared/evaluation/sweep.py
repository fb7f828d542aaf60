"""
Parameter sweeps of mean relative error over (T, w) grids.
"""

import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import Literal

import numpy as np
import pandas as pd

from shared.config.logging import get_logger
from shared.evaluation.crossval import cross_validate, evaluate_prediction
from shared.evaluation.dataset import EvaluationDataset

logger = get_logger(__name__)

SweepMode = Literal["estimation", "prediction"]

HOUR_SECONDS = 3600.0


def choose_hours(
    start_time: float, end_time: float, count: int, seed: int
) -> list[tuple[float, float]]:
    """
    Seeded, non-overlapping whole hours drawn without replacement.

    Spans shorter than one hour yield the whole span.

    Returns:
        (begin, end) pairs in time order
    """
    slots = math.floor((end_time - start_time) / HOUR_SECONDS)
    if slots == 0:
        return [(start_time, end_time)]
    rng = np.random.default_rng(seed)
    chosen = sorted(int(i) for i in rng.choice(slots, size=min(count, slots), replace=False))
    return [
        (start_time + i * HOUR_SECONDS, start_time + (i + 1) * HOUR_SECONDS) for i in chosen
    ]


def parse_range(text: str) -> list[float]:
    """
    Parse ``start:stop:step`` (inclusive stop) or a single value.

    Raises:
        ValueError: On malformed input or a non-positive step
    """
    parts = text.split(":")
    if len(parts) == 1:
        return [float(parts[0])]
    if len(parts) != 3:
        raise ValueError(f"Expected start:stop:step, got {text!r}")
    start, stop, step = (float(p) for p in parts)
    if step <= 0 or stop < start:
        raise ValueError(f"Invalid range {text!r}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + i * step for i in range(count)]


def _cell(
    dataset: EvaluationDataset,
    interval_seconds: float,
    w: int,
    hours: Sequence[tuple[float, float]],
    missing_ratio: float,
    seed: int,
    method: str,
    mode: SweepMode,
) -> tuple[float, int, float, int]:
    prepared = dataset.prepare(interval_seconds, w)
    intervals = sorted({j for begin, end in hours for j in prepared.intervals_within(begin, end)})
    if mode == "prediction":
        intervals = [n for n in intervals if n < prepared.n_intervals]
        report = evaluate_prediction(prepared, (method,), intervals)
    else:
        report = cross_validate(prepared, missing_ratio, method, seed, intervals)
    return interval_seconds, w, report.mean_error(method), len(intervals)


def parameter_sweep(
    dataset: EvaluationDataset,
    t_values: Sequence[float],
    w_values: Sequence[int],
    missing_ratio: float,
    sample_hours: int,
    seed: int,
    method: str = "stc",
    mode: SweepMode = "estimation",
    jobs: int = 1,
) -> pd.DataFrame:
    """
    Mean relative error for every (T, w) cell over seeded sample hours.

    Args:
        dataset: Evaluation dataset
        t_values: Interval lengths in seconds
        w_values: Window lengths
        missing_ratio: Hidden fraction (estimation mode)
        sample_hours: Number of separated hours averaged per cell
        seed: Seed for hour choice and hidden cells
        method: Method evaluated in every cell
        mode: estimation (hide and recover) or prediction (one step ahead)
        jobs: Cells evaluated in parallel

    Returns:
        DataFrame with columns T, w, mean_error, intervals, ordered by (T, w)
    """
    if not t_values or not w_values:
        raise ValueError("Sweep ranges must be nonempty")
    hours = choose_hours(dataset.start_time, dataset.end_time, sample_hours, seed)
    cells = [(t, int(w)) for t in t_values for w in w_values]

    def run(cell: tuple[float, int]) -> tuple[float, int, float, int]:
        return _cell(dataset, cell[0], cell[1], hours, missing_ratio, seed, method, mode)

    if jobs > 1 and len(cells) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run, cells))
    else:
        results = [run(cell) for cell in cells]

    grid = pd.DataFrame(results, columns=["T", "w", "mean_error", "intervals"])
    logger.info("parameter_sweep_finished", cells=len(cells), hours=len(hours), method=method)
    return grid
