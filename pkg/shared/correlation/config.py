"""
Configuration settings for cross-correlation windows and lag estimation.
"""

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class CorrelationSettings(BaseSettings):
    """Settings for the sliding window and vehicle-tracking lag estimation."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="CORRELATION_",
        case_sensitive=False,
        extra="ignore",
    )

    window: int = Field(
        default=12,
        ge=2,
        le=200,
        description="Sliding window length w in intervals",
    )
    free_flow_speed: float = Field(
        default=13.9,
        gt=0.0,
        le=60.0,
        description="Speed v_ff (m/s) used for lags of pairs never tracked",
    )
    lookback_seconds: float = Field(
        default=1800.0,
        gt=0.0,
        le=86_400.0,
        description="How far before its visit to r a vehicle's pass over u may lie",
    )


@lru_cache
def get_correlation_settings() -> CorrelationSettings:
    """
    Get cached correlation settings instance.

    Returns:
        CorrelationSettings: Cached settings instance
    """
    return CorrelationSettings()
