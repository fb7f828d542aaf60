"""
Minimizing the single-vacancy objective over [0, v_max].

A coarse grid scan (step = 64 x tolerance) locates the best grid point; when f'
changes sign on a neighboring grid bracket the stationary point is refined by
bisection. Ties on f go to the lower speed.
"""

import math

import numpy as np
from scipy.optimize import bisect

from shared.completion.objective import (
    CompletionContext,
    objective_derivative,
    objective_values,
)
from shared.exceptions import AllDegenerateError, SingularPointError
from shared.observability.metrics import solver_refinements_total

GRID_FACTOR = 64


def search_grid(v_max: float, tolerance: float) -> np.ndarray:
    """Evenly spaced candidates over [0, v_max] with step at most 64 x tolerance."""
    steps = max(1, math.ceil(v_max / (tolerance * GRID_FACTOR)))
    return np.linspace(0.0, v_max, steps + 1)


def _derivative_or_none(x: float, ctx: CompletionContext) -> float | None:
    try:
        return objective_derivative(x, ctx)
    except SingularPointError:
        return None


def solve_single_vacancy(ctx: CompletionContext, tolerance: float = 1e-3) -> float:
    """
    Speed minimizing f for the vacancy described by ``ctx``.

    Args:
        ctx: Completion context with at least one contributor
        tolerance: Solver tolerance in m/s

    Returns:
        Minimizer within [0, ctx.v_max]

    Raises:
        AllDegenerateError: If the context has no contributors
    """
    if ctx.m == 0:
        raise AllDegenerateError(ctx.segment_id)

    grid = search_grid(ctx.v_max, tolerance)
    values = objective_values(ctx, grid)
    best = int(np.argmin(values))
    best_x = float(grid[best])
    best_f = float(values[best])

    outcome = "grid"
    for lo, hi in ((best - 1, best), (best, best + 1)):
        if lo < 0 or hi >= grid.size:
            continue
        a, b = float(grid[lo]), float(grid[hi])
        da = _derivative_or_none(a, ctx)
        db = _derivative_or_none(b, ctx)
        if da is None or db is None or da * db >= 0.0:
            continue
        try:
            root = bisect(objective_derivative, a, b, args=(ctx,), xtol=tolerance / 2.0)
        except (SingularPointError, ValueError):
            continue
        f_root = float(objective_values(ctx, np.array([root]))[0])
        if f_root < best_f or (f_root == best_f and root < best_x):
            best_x, best_f = float(root), f_root
            outcome = "refined"

    solver_refinements_total.labels(outcome=outcome).inc()
    return float(np.clip(best_x, 0.0, ctx.v_max))
