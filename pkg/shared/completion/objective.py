"""
The single-vacancy objective f(x) = sum_i (c_now_i(x) - c_pre_i)^2 and its derivative.

With Y_r = [h_1 .. h_{w-1}, x] and each contributor slice centered as y_i, the
correlation is (A_i + b_i x) / sqrt(S_r(x) S_i) where
A_i = sum_{j<w} h_j y_i[j], b_i = y_i[w], S_i = |y_i|^2 and
S_r(x) = S_h + (x - mean(h))^2 (w-1)/w. Everything except x is precomputed.
"""

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from shared.exceptions import SingularPointError


@dataclass(frozen=True, eq=False)
class Contributor:
    """One upstream segment taking part in a solve."""

    segment_id: str
    k: int
    c_pre: float
    y: np.ndarray  # X_{r_i}(n-k-w+1 .. n-k)


@dataclass
class CompletionContext:
    """Everything needed to evaluate f for the vacancy X_r(n)."""

    segment_id: str
    n: int
    history: np.ndarray  # X_r(n-w+1 .. n-1)
    contributors: Sequence[Contributor]
    v_max: float
    _terms: tuple[np.ndarray, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.history = np.asarray(self.history, dtype=float)
        w = self.history.size + 1
        if w < 2:
            raise ValueError("History must hold at least one interval")
        for c in self.contributors:
            if c.y.size != w:
                raise ValueError(f"Contributor {c.segment_id} slice must have length {w}")

        mu_h = float(self.history.mean())
        s_h = float(np.sum((self.history - mu_h) ** 2))
        if self.contributors:
            ys = np.vstack([c.y for c in self.contributors]).astype(float)
        else:
            ys = np.empty((0, w))
        yc = ys - ys.mean(axis=1, keepdims=True)
        a = yc[:, :-1] @ self.history
        b = yc[:, -1]
        s_i = np.sum(yc * yc, axis=1)
        c_pre = np.array([c.c_pre for c in self.contributors], dtype=float)
        self._terms = (np.array([mu_h, s_h, (w - 1) / w]), a, b, np.sqrt(s_i), c_pre)

    @property
    def w(self) -> int:
        """Window length."""
        return self.history.size + 1

    @property
    def m(self) -> int:
        """Number of contributors."""
        return len(self.contributors)


def _s_r(ctx: CompletionContext, x: np.ndarray) -> np.ndarray:
    (mu_h, s_h, factor), *_ = ctx._terms
    return s_h + (x - mu_h) ** 2 * factor


def correlations(ctx: CompletionContext, x: np.ndarray) -> np.ndarray:
    """c_now of every contributor at every candidate; shape (len(x), m)."""
    _, a, b, sqrt_si, _ = ctx._terms
    x = np.atleast_1d(np.asarray(x, dtype=float))
    with np.errstate(divide="ignore", invalid="ignore"):
        denom = np.sqrt(_s_r(ctx, x))[:, None] * sqrt_si[None, :]
        return (a[None, :] + b[None, :] * x[:, None]) / denom


def objective_values(ctx: CompletionContext, x: np.ndarray) -> np.ndarray:
    """
    f at many candidates at once.

    Candidates where Y_r has zero variance evaluate to +inf.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    c_pre = ctx._terms[4]
    f = np.sum((correlations(ctx, x) - c_pre[None, :]) ** 2, axis=1)
    f[_s_r(ctx, x) <= 0.0] = np.inf
    return f


def objective(candidate: float, ctx: CompletionContext) -> float:
    """
    f(candidate).

    Raises:
        SingularPointError: If Y_r has zero variance at the candidate
    """
    if _s_r(ctx, np.array([candidate]))[0] <= 0.0:
        raise SingularPointError(candidate)
    return float(objective_values(ctx, np.array([candidate]))[0])


def objective_derivative(candidate: float, ctx: CompletionContext) -> float:
    """
    df/dx at the candidate.

    Raises:
        SingularPointError: If Y_r has zero variance at the candidate
    """
    (mu_h, _, factor), a, b, sqrt_si, c_pre = ctx._terms
    x = float(candidate)
    s_r = float(_s_r(ctx, np.array([x]))[0])
    if s_r <= 0.0:
        raise SingularPointError(candidate)
    root = np.sqrt(s_r)
    ds_r = 2.0 * factor * (x - mu_h)
    g = a + b * x
    c = g / (root * sqrt_si)
    dc = (b * root - g * ds_r / (2.0 * root)) / (s_r * sqrt_si)
    return float(np.sum(2.0 * (c - c_pre) * dc))
