"""
Configuration management.
"""

from shared.config.logging import bind_run_context, get_logger, setup_logging
from shared.config.settings import Settings, get_settings

__all__ = ["Settings", "bind_run_context", "get_logger", "get_settings", "setup_logging"]
