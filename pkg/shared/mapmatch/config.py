"""
Configuration settings for map matching.
"""

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class MapMatchSettings(BaseSettings):
    """Settings for grid indexing and vehicle-tracking map matching."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="MAPMATCH_",
        case_sensitive=False,
        extra="ignore",
    )

    d_min: float = Field(
        default=30.0,
        gt=0.0,
        le=500.0,
        description="Points farther than this from every candidate segment are outliers (m)",
    )
    cell_size: float = Field(
        default=250.0,
        gt=0.0,
        le=10_000.0,
        description="Grid cell edge length (m); trades lookup cost against index size",
    )
    max_depth: int = Field(
        default=2,
        ge=0,
        le=10,
        description="Outward-neighbor expansion levels for tracking candidates",
    )
    tracking_gap_seconds: float = Field(
        default=120.0,
        gt=0.0,
        le=3600.0,
        description="Maximum report gap for which the previous match narrows candidates",
    )


@lru_cache
def get_mapmatch_settings() -> MapMatchSettings:
    """
    Get cached map matching settings instance.

    Returns:
        MapMatchSettings: Cached settings instance
    """
    return MapMatchSettings()
