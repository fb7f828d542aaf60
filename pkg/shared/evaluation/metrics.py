"""
Relative error between estimated and true speed vectors.
"""

import numpy as np

from shared.exceptions import ZeroTruthNormError


def relative_error(truth: np.ndarray, estimate: np.ndarray) -> float:
    """
    epsilon = ||estimate - truth||_2 / ||truth||_2.

    Raises:
        ValueError: If the vectors differ in length
        ZeroTruthNormError: If the truth vector has zero norm
    """
    truth = np.asarray(truth, dtype=float)
    estimate = np.asarray(estimate, dtype=float)
    if truth.shape != estimate.shape:
        raise ValueError("Truth and estimate must have equal length")
    norm = float(np.linalg.norm(truth))
    if norm == 0.0:
        raise ZeroTruthNormError()
    return float(np.linalg.norm(estimate - truth)) / norm
