"""
Core CLI configuration.
"""

from services.cli.app.core.config import RunConfig, build_run_config

__all__ = ["RunConfig", "build_run_config"]
