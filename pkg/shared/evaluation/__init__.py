"""
Evaluation harness: relative error, hide-and-recover cross-validation, sweeps.
"""

from shared.evaluation.crossval import (
    ESTIMATION_METHODS,
    PREDICTION_METHODS,
    compare_methods,
    cross_validate,
    evaluate_prediction,
    hide_cells,
)
from shared.evaluation.dataset import EvaluationDataset, PreparedDataset
from shared.evaluation.metrics import relative_error
from shared.evaluation.report import REPORT_COLUMNS, EvalReport
from shared.evaluation.sweep import choose_hours, parameter_sweep, parse_range

__all__ = [
    "ESTIMATION_METHODS",
    "PREDICTION_METHODS",
    "REPORT_COLUMNS",
    "EvalReport",
    "EvaluationDataset",
    "PreparedDataset",
    "choose_hours",
    "compare_methods",
    "cross_validate",
    "evaluate_prediction",
    "hide_cells",
    "parameter_sweep",
    "parse_range",
    "relative_error",
]
