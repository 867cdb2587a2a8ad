"""Structured logging configuration for the contingent planner"""
import logging
import sys
from typing import Any, Dict, Optional

import structlog
from structlog.dev import ConsoleRenderer
from structlog.processors import JSONRenderer, StackInfoRenderer, TimeStamper
from structlog.stdlib import LoggerFactory

from config import Config


def setup_structured_logging(config: Config) -> None:
    """Setup structured logging on stderr, JSON or console rendered; stdout stays free for plans"""

    processors = [
        structlog.stdlib.filter_by_level,
        structlog.stdlib.add_logger_name,
        structlog.stdlib.add_log_level,
        TimeStamper(fmt="iso"),
        StackInfoRenderer(),
        structlog.processors.format_exc_info,
    ]

    if config.log_format == "json":
        processors.append(JSONRenderer())
    else:
        processors.append(ConsoleRenderer(colors=False))

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.stdlib.BoundLogger,
        logger_factory=LoggerFactory(),
        cache_logger_on_first_use=True,
    )

    level = getattr(logging, config.log_level.upper())
    handlers = []

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    handlers.append(console_handler)

    if config.log_file is not None:
        file_handler = logging.FileHandler(str(config.log_file))
        file_handler.setLevel(level)
        handlers.append(file_handler)

    logging.basicConfig(level=level, format="%(message)s", handlers=handlers, force=True)


def get_logger(name: str) -> structlog.stdlib.BoundLogger:
    """Get a structured logger instance"""
    return structlog.get_logger(name)


def log_search_start(logger: structlog.stdlib.BoundLogger, problem_name: str, tasks: int, beliefs: int) -> None:
    logger.info(
        "Search starting",
        problem=problem_name,
        initial_tasks=tasks,
        belief_states=beliefs,
        event_type="search_start",
    )


def log_search_summary(logger: structlog.stdlib.BoundLogger, stats: Any, cost: Optional[float], elapsed: float) -> None:
    """Log the end of a planning run with its counters"""
    logger.info(
        "Search completed",
        solved=cost is not None,
        cost=cost,
        nodes=stats.nodes,
        backtracks=stats.backtracks,
        updates=stats.updates,
        inconsistencies=stats.inconsistencies,
        max_depth=stats.max_depth,
        elapsed_seconds=round(elapsed, 3),
        event_type="search_complete",
    )


def log_campaign_row(logger: structlog.stdlib.BoundLogger, row: Dict[str, Any], cpu_seconds: float) -> None:
    logger.info(
        "Benchmark row recorded",
        cpu_seconds=round(cpu_seconds, 4),
        event_type="bench_row",
        **row,
    )


def log_error(logger: structlog.stdlib.BoundLogger, error: Exception, context: Dict[str, Any] = None) -> None:
    """Log error with structured context"""
    logger.error(
        "Error occurred",
        error=str(error),
        error_type=type(error).__name__,
        context=context or {},
        event_type="error",
        exc_info=True,
    )
