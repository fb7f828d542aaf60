"""
Evaluation reports: one relative error per (interval, method, missing ratio).
"""

from collections.abc import Iterable
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd

REPORT_COLUMNS = ["interval", "method", "missing_ratio", "cells", "error"]


@dataclass
class EvalReport:
    """Rows of relative errors; ``cells`` counts the cells each error spans."""

    rows: pd.DataFrame

    @classmethod
    def from_records(cls, records: Iterable[tuple[int, str, float, int, float]]) -> "EvalReport":
        return cls(pd.DataFrame(list(records), columns=REPORT_COLUMNS))

    @classmethod
    def concat(cls, reports: Iterable["EvalReport"]) -> "EvalReport":
        frames = [r.rows for r in reports]
        if not frames:
            return cls(pd.DataFrame(columns=REPORT_COLUMNS))
        return cls(pd.concat(frames, ignore_index=True))

    def __len__(self) -> int:
        return len(self.rows)

    def mean_error(self, method: str | None = None, missing_ratio: float | None = None) -> float:
        """Mean error over rows matching the filters; NaN rows are ignored."""
        rows = self.rows
        if method is not None:
            rows = rows[rows["method"] == method]
        if missing_ratio is not None:
            rows = rows[np.isclose(rows["missing_ratio"].astype(float), missing_ratio)]
        errors = rows["error"].astype(float).dropna()
        return float(errors.mean()) if len(errors) else float("nan")

    def summary(self) -> pd.DataFrame:
        """Mean error and interval count per (method, missing_ratio)."""
        grouped = self.rows.groupby(["method", "missing_ratio"], sort=True)["error"]
        return grouped.agg(mean_error="mean", intervals="count").reset_index()

    def to_csv(self, path: str | Path) -> None:
        self.rows.to_csv(path, index=False, float_format="%.6f")
