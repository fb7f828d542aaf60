"""
Structured logging with structlog.

Logs go to stderr so that stdout stays free for command output such as evaluation
summaries. Every event carries the program name and, once bound, the running
subcommand.
"""

import logging
import sys
from typing import Any

import numpy as np
import structlog
from structlog.types import EventDict, Processor

PROGRAM = "stc"


def add_program(logger: Any, method_name: str, event_dict: EventDict) -> EventDict:
    event_dict["app"] = PROGRAM
    return event_dict


def plain_numbers(logger: Any, method_name: str, event_dict: EventDict) -> EventDict:
    """
    Replace numpy scalars with Python numbers.

    Counts and means computed with numpy would otherwise render as their repr in JSON.
    """
    for key, value in event_dict.items():
        if isinstance(value, np.generic):
            event_dict[key] = value.item()
    return event_dict


def setup_logging(
    log_level: str = "INFO",
    json_logs: bool = True,
    service_name: str | None = None,
) -> None:
    """
    Configure structlog on top of the standard library root logger.

    Args:
        log_level: DEBUG, INFO, WARNING, ERROR or CRITICAL; unknown names mean INFO
        json_logs: One JSON object per line when True, key=value console lines otherwise
        service_name: Added to every event as ``service`` when given
    """
    level = getattr(logging, log_level.upper(), logging.INFO)
    logging.basicConfig(format="%(message)s", stream=sys.stderr, level=level, force=True)

    processors: list[Processor] = [
        structlog.contextvars.merge_contextvars,
        structlog.stdlib.filter_by_level,
        structlog.stdlib.add_log_level,
        structlog.stdlib.add_logger_name,
        structlog.processors.TimeStamper(fmt="iso"),
        add_program,
        plain_numbers,
    ]
    if service_name:
        structlog.contextvars.bind_contextvars(service=service_name)

    if json_logs:
        processors += [structlog.processors.format_exc_info, structlog.processors.JSONRenderer()]
    else:
        processors.append(structlog.dev.ConsoleRenderer(colors=False))

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.stdlib.BoundLogger,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )


def bind_run_context(**values: Any) -> None:
    """Attach key/values such as the subcommand to every following event."""
    structlog.contextvars.bind_contextvars(**values)


def get_logger(name: str | None = None) -> structlog.stdlib.BoundLogger:
    """Structured logger, typically ``get_logger(__name__)``."""
    return structlog.get_logger(name)
