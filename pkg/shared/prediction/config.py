"""
Configuration settings for one-step travel speed prediction.
"""

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class PredictionSettings(BaseSettings):
    """Settings for the lag-regression predictor; defaults are the tuned T = 90 s, w = 13."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="PREDICTION_",
        case_sensitive=False,
        extra="ignore",
    )

    interval_seconds: float = Field(
        default=90.0,
        gt=0.0,
        le=3600.0,
        description="Calculation interval T for prediction runs (s)",
    )
    window: int = Field(
        default=13,
        ge=2,
        le=200,
        description="Regression and correlation window w in intervals",
    )
    v_max: float = Field(
        default=40.0,
        gt=0.0,
        le=100.0,
        description="Predictions are clamped to [0, v_max] (m/s)",
    )


@lru_cache
def get_prediction_settings() -> PredictionSettings:
    """
    Get cached prediction settings instance.

    Returns:
        PredictionSettings: Cached settings instance
    """
    return PredictionSettings()
