"""Tests for logging configuration"""
import logging
import os
import sys
import tempfile
from pathlib import Path
from unittest.mock import patch

from config import Config
from logging_config import (
    get_logger,
    log_campaign_row,
    log_error,
    log_search_start,
    log_search_summary,
    setup_structured_logging,
)
from planner.context import SearchStats


class TestLoggingConfig:
    """Test logging configuration and structured logging"""

    def teardown_method(self):
        with patch.dict(os.environ, {}, clear=True):
            setup_structured_logging(Config())

    def test_setup_structured_logging(self):
        """Test structured logging setup"""
        with tempfile.TemporaryDirectory() as tmp_dir:
            log_file = Path(tmp_dir) / "logs" / "test.log"

            config = Config(log_file=log_file, log_level="DEBUG")
            setup_structured_logging(config)

            assert log_file.parent.exists()
            logger = logging.getLogger("test")
            assert logger.isEnabledFor(logging.DEBUG)
            logging.getLogger().handlers.clear()

    def test_default_level_is_quiet(self):
        with patch.dict(os.environ, {}, clear=True):
            setup_structured_logging(Config())

        logger = logging.getLogger("test")
        assert not logger.isEnabledFor(logging.INFO)
        assert logger.isEnabledFor(logging.WARNING)

    def test_handlers_use_stderr(self):
        """Stdout is reserved for plans"""
        with patch.dict(os.environ, {}, clear=True):
            setup_structured_logging(Config())

        streams = [h.stream for h in logging.getLogger().handlers if isinstance(h, logging.StreamHandler)]
        assert sys.stderr in streams
        assert sys.stdout not in streams

    def test_get_logger(self):
        """Test getting structured logger"""
        logger = get_logger("test_logger")

        assert logger is not None
        assert hasattr(logger, 'info')
        assert hasattr(logger, 'error')
        assert hasattr(logger, 'debug')
        assert hasattr(logger, 'warning')

    def test_log_search_events(self):
        """Test structured search logging"""
        logger = get_logger("test")
        stats = SearchStats(nodes=10, backtracks=2, updates=8, inconsistencies=1, max_depth=5)

        # This should not raise an exception
        log_search_start(logger, "medicate-2", tasks=1, beliefs=1)
        log_search_summary(logger, stats, cost=4.0, elapsed=0.25)
        log_search_summary(logger, stats, cost=None, elapsed=0.25)

    def test_log_campaign_row(self):
        logger = get_logger("test")
        row = {"domain": "medicate", "scale": 2, "rep": 1, "wall_ms": 1.5, "nodes": 9, "backtracks": 0, "cost": 4.0}

        log_campaign_row(logger, row, cpu_seconds=0.01)

    def test_log_error(self):
        """Test structured error logging"""
        logger = get_logger("test")
        error = ValueError("Test error")
        context = {"component": "test", "command": "plan"}

        # This should not raise an exception
        log_error(logger, error, context)
        log_error(logger, error)  # Without context

    def test_json_and_console_renderers(self):
        """Test both renderer configurations"""
        with tempfile.TemporaryDirectory() as tmp_dir:
            for fmt in ("json", "console"):
                config = Config(log_format=fmt, log_file=Path(tmp_dir) / f"{fmt}.log", log_level="INFO")
                setup_structured_logging(config)
                logger = get_logger(f"test.{fmt}")
                logger.info("renderer check", event_type="test")
                for handler in logging.getLogger().handlers:
                    handler.flush()
                assert (Path(tmp_dir) / f"{fmt}.log").exists()
            logging.getLogger().handlers.clear()
