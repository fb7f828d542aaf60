"""
Custom exceptions for the travel speed engine.
"""

from typing import Any


class StcError(Exception):
    """Base exception for all engine errors."""

    def __init__(self, message: str, error_code: str | None = None, details: dict | None = None):
        """
        Initialize exception.

        Args:
            message: Error message
            error_code: Optional error code
            details: Optional error details
        """
        self.message = message
        self.error_code = error_code
        self.details = details or {}
        super().__init__(message)


# Input Errors


class DataFormatError(StcError):
    """Malformed input document or stream."""

    def __init__(self, message: str, source: str | None = None):
        """
        Initialize exception.

        Args:
            message: Error message
            source: Name of the offending input
        """
        details = {"source": source} if source else {}
        super().__init__(message, error_code="DATA_FORMAT_ERROR", details=details)


class ValidationError(StcError):
    """Validation errors."""

    def __init__(self, message: str, field: str | None = None, value: Any = None):
        """
        Initialize exception.

        Args:
            message: Error message
            field: Field name
            value: Field value
        """
        details = {}
        if field:
            details["field"] = field
        if value is not None:
            details["value"] = str(value)
        super().__init__(message, error_code="VALIDATION_ERROR", details=details)


# Road Net Errors


class RoadNetError(StcError):
    """Road net related errors."""

    pass


class UnreachableError(RoadNetError):
    """No lawful directed path exists between two places on the net."""

    def __init__(self, source: str, target: str):
        """
        Initialize exception.

        Args:
            source: Origin segment id
            target: Destination segment id
        """
        super().__init__(
            f"No directed path from {source} to {target}",
            error_code="UNREACHABLE",
            details={"source": source, "target": target},
        )


class UnknownSegmentError(RoadNetError):
    """Segment id is not part of the net."""

    def __init__(self, segment_id: str):
        """Initialize exception."""
        super().__init__(
            f"Unknown segment: {segment_id}",
            error_code="UNKNOWN_SEGMENT",
            details={"segment_id": segment_id},
        )


# Speed Errors


class NotCoveredError(StcError):
    """Travel speed requested for a segment that is not covered."""

    def __init__(self, segment_id: str, interval: int):
        """
        Initialize exception.

        Args:
            segment_id: Segment id
            interval: Interval ordinal
        """
        super().__init__(
            f"Segment {segment_id} is not covered in interval {interval}",
            error_code="NOT_COVERED",
            details={"segment_id": segment_id, "interval": interval},
        )


# Correlation Errors


class CorrelationError(StcError):
    """Cross correlation errors."""

    pass


class DegenerateSeriesError(CorrelationError):
    """A series has zero standard deviation, so correlation is undefined."""

    def __init__(self, message: str = "Series has zero standard deviation"):
        """Initialize exception."""
        super().__init__(message, error_code="DEGENERATE_SERIES")


class InsufficientHistoryError(CorrelationError):
    """Requested window reaches before the first interval."""

    def __init__(self, first_needed: int):
        """
        Initialize exception.

        Args:
            first_needed: First interval ordinal the window would need
        """
        super().__init__(
            f"Window needs interval {first_needed}, history starts at 1",
            error_code="INSUFFICIENT_HISTORY",
            details={"first_needed": first_needed},
        )


class VacantEntryError(CorrelationError):
    """A referenced speed entry is vacant."""

    def __init__(self, segment_id: str, intervals: list[int]):
        """
        Initialize exception.

        Args:
            segment_id: Segment id
            intervals: Vacant interval ordinals
        """
        super().__init__(
            f"Segment {segment_id} is vacant at intervals {intervals}",
            error_code="VACANT_ENTRY",
            details={"segment_id": segment_id, "intervals": intervals},
        )


class NoTraversalsError(CorrelationError):
    """No tracked vehicle went from u to r in the window."""

    def __init__(self, upstream: str, target: str):
        """Initialize exception."""
        super().__init__(
            f"No traversals from {upstream} to {target}",
            error_code="NO_TRAVERSALS",
            details={"upstream": upstream, "target": target},
        )


# Completion Errors


class CompletionError(StcError):
    """Vacancy completion errors."""

    pass


class NotCalculableError(CompletionError):
    """Too few usable contributors to fill a vacancy."""

    def __init__(self, segment_id: str, available: int, required: int):
        """
        Initialize exception.

        Args:
            segment_id: Target segment id
            available: Usable contributor count
            required: Required contributor count
        """
        super().__init__(
            f"Segment {segment_id} is not calculable ({available} < {required})",
            error_code="NOT_CALCULABLE",
            details={"segment_id": segment_id, "available": available, "required": required},
        )


class AllDegenerateError(CompletionError):
    """Every contributor was dropped as degenerate."""

    def __init__(self, segment_id: str):
        """Initialize exception."""
        super().__init__(
            f"All contributors of {segment_id} are degenerate",
            error_code="ALL_DEGENERATE",
            details={"segment_id": segment_id},
        )


class SingularPointError(CompletionError):
    """Objective derivative undefined at the candidate."""

    def __init__(self, candidate: float):
        """Initialize exception."""
        super().__init__(
            f"Objective derivative is singular at {candidate}",
            error_code="SINGULAR_POINT",
            details={"candidate": candidate},
        )


# Prediction Errors


class PredictionError(StcError):
    """Prediction errors."""

    pass


class EmptyContributorsError(PredictionError):
    """No contributor with a positive lag survived."""

    def __init__(self, segment_id: str):
        """Initialize exception."""
        super().__init__(
            f"No positively lagged contributors for {segment_id}",
            error_code="EMPTY_R0",
            details={"segment_id": segment_id},
        )


class DegeneratePredictorError(PredictionError):
    """Regression predictor has zero variance."""

    def __init__(self, segment_id: str):
        """Initialize exception."""
        super().__init__(
            f"Predictor series of {segment_id} is constant",
            error_code="DEGENERATE_PREDICTOR",
            details={"segment_id": segment_id},
        )


# Baseline Errors


class BaselineError(StcError):
    """Baseline estimator errors."""

    pass


class NoNeighborsError(BaselineError):
    """No valued segment to interpolate from."""

    def __init__(self, segment_id: str, interval: int):
        """Initialize exception."""
        super().__init__(
            f"No valued neighbours for {segment_id} at interval {interval}",
            error_code="NO_NEIGHBORS",
            details={"segment_id": segment_id, "interval": interval},
        )


class SingularSystemError(BaselineError):
    """Kriging system could not be solved."""

    def __init__(self, message: str = "Kriging system is singular"):
        """Initialize exception."""
        super().__init__(message, error_code="SINGULAR_SYSTEM")


# Evaluation Errors


class ZeroTruthNormError(StcError):
    """Relative error undefined for an all-zero truth vector."""

    def __init__(self) -> None:
        """Initialize exception."""
        super().__init__("Truth vector has zero norm", error_code="ZERO_TRUTH_NORM")
