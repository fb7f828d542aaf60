"""
Configuration settings for record ingestion.

Defines the calculation interval, coverage threshold and the local projection
origin used to turn lon/lat into planar meters.
"""

from functools import lru_cache
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class IngestSettings(BaseSettings):
    """Settings for record parsing and interval bucketing."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="INGEST_",
        case_sensitive=False,
        extra="ignore",
    )

    # Intervals
    interval_seconds: float = Field(
        default=80.0,
        gt=0.0,
        le=3600.0,
        description="Length T of one calculation interval in seconds",
    )
    start_time: float | None = Field(
        default=None,
        description="Epoch seconds of the first interval; defaults to the earliest record",
    )

    # Coverage
    nthr: int = Field(
        default=2,
        ge=1,
        le=1000,
        description="Records needed in an interval for a segment to count as covered",
    )

    # Projection
    origin_lon: float = Field(
        default=114.05,
        ge=-180.0,
        le=180.0,
        description="Longitude of the local projection origin",
    )
    origin_lat: float = Field(
        default=22.55,
        ge=-85.0,
        le=85.0,
        description="Latitude of the local projection origin",
    )

    # Units
    speed_unit: Literal["mps", "kmh", "mph"] = Field(
        default="mps",
        description="Unit of the speed column in input records",
    )


@lru_cache
def get_ingest_settings() -> IngestSettings:
    """
    Get cached ingest settings instance.

    Returns:
        IngestSettings: Cached settings instance
    """
    return IngestSettings()
