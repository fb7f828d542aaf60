"""
Estimation pipeline: matched traces to a vacancy-free speed table.
"""

from workers.estimation.models import EstimationOutput, EstimationRequest, EstimationSummary
from workers.estimation.processor import EstimationProcessor

__all__ = [
    "EstimationOutput",
    "EstimationProcessor",
    "EstimationRequest",
    "EstimationSummary",
]
