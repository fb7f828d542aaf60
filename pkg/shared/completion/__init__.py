"""
Vacancy completion: single-vacancy minimization and recursive filling.
"""

from shared.completion.config import CompletionSettings, get_completion_settings
from shared.completion.engine import (
    CompletionEngine,
    CompletionState,
    IntervalSummary,
    IntervalView,
    RegionFiller,
    available_contributors,
    build_context,
    complete_all,
    fallback_value,
    initialize_history,
    is_calculable,
)
from shared.completion.objective import (
    CompletionContext,
    Contributor,
    correlations,
    objective,
    objective_derivative,
    objective_values,
)
from shared.completion.regions import partition_regions
from shared.completion.solver import search_grid, solve_single_vacancy

__all__ = [
    "CompletionContext",
    "CompletionEngine",
    "CompletionSettings",
    "CompletionState",
    "Contributor",
    "IntervalSummary",
    "IntervalView",
    "RegionFiller",
    "available_contributors",
    "build_context",
    "complete_all",
    "correlations",
    "fallback_value",
    "get_completion_settings",
    "initialize_history",
    "is_calculable",
    "objective",
    "objective_derivative",
    "objective_values",
    "partition_regions",
    "search_grid",
    "solve_single_vacancy",
]
