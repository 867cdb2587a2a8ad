"""Tests for configuration module"""
import os
import tempfile
from pathlib import Path
from unittest.mock import patch

import pytest
from pydantic import ValidationError

from config import Config, PlannerConfig


class TestConfig:
    """Test configuration validation and parsing"""

    def test_default_config(self):
        """Test default configuration values"""
        with patch.dict(os.environ, {}, clear=True):
            config = Config()

        assert config.max_depth == 10_000
        assert config.allow_null_branches is False
        assert config.tie_break_seed is None
        assert config.log_level == "WARNING"
        assert config.log_file is None
        assert config.log_format == "console"
        assert config.oracle_node_budget == 1_000_000
        assert config.samples == 10_000
        assert config.seed == 0
        assert config.jobs == 1
        assert config.out_dir == Path("bench-out")

    def test_environment_override(self):
        """Test configuration override from environment variables"""
        env_vars = {
            "HQCP_MAX_DEPTH": "500",
            "HQCP_ALLOW_NULL_BRANCHES": "true",
            "HQCP_LOG": "debug",
            "HQCP_LOG_FORMAT": "JSON",
            "HQCP_SAMPLES": "2000",
            "HQCP_SEED": "7",
            "HQCP_JOBS": "4",
        }

        with patch.dict(os.environ, env_vars, clear=True):
            config = Config()

            assert config.max_depth == 500
            assert config.allow_null_branches is True
            assert config.log_level == "DEBUG"
            assert config.log_format == "json"
            assert config.samples == 2000
            assert config.seed == 7
            assert config.jobs == 4

    def test_unprefixed_variables_ignored(self):
        """Variables without the HQCP_ prefix do not leak in"""
        with patch.dict(os.environ, {"MAX_DEPTH": "3", "LOG_LEVEL": "DEBUG"}, clear=True):
            config = Config()

            assert config.max_depth == 10_000
            assert config.log_level == "WARNING"

    def test_validation_max_depth(self):
        with patch.dict(os.environ, {"HQCP_MAX_DEPTH": "0"}, clear=True):
            with pytest.raises(ValidationError):
                Config()

    def test_validation_log_level(self):
        with patch.dict(os.environ, {"HQCP_LOG": "LOUD"}, clear=True):
            with pytest.raises(ValidationError):
                Config()

    def test_validation_log_format(self):
        with pytest.raises(ValidationError):
            Config(log_format="xml")

    def test_validation_seed_range(self):
        with pytest.raises(ValidationError):
            Config(seed=-1)
        with pytest.raises(ValidationError):
            Config(seed=2**64)

    def test_keyword_arguments_win_over_environment(self):
        with patch.dict(os.environ, {"HQCP_MAX_DEPTH": "500"}, clear=True):
            config = Config(max_depth=42, log_level="info")

            assert config.max_depth == 42
            assert config.log_level == "INFO"

    def test_env_file(self):
        """Test loading settings from an env-style file"""
        with tempfile.TemporaryDirectory() as tmp_dir:
            env_file = Path(tmp_dir) / "hqcp.env"
            env_file.write_text("HQCP_SAMPLES=123\nHQCP_ALLOW_NULL_BRANCHES=1\n")

            with patch.dict(os.environ, {}, clear=True):
                config = Config(_env_file=env_file)

            assert config.samples == 123
            assert config.allow_null_branches is True

    def test_log_directory_creation(self):
        """Test that the log file's directory is created"""
        with tempfile.TemporaryDirectory() as tmp_dir:
            log_file = Path(tmp_dir) / "nested" / "hqcp.log"

            config = Config(log_file=log_file)

            assert config.log_file == log_file
            assert log_file.parent.exists()

    def test_planner_options(self):
        with patch.dict(os.environ, {}, clear=True):
            config = Config(max_depth=77, allow_null_branches=True, log_level="DEBUG")

        options = config.planner_options()

        assert isinstance(options, PlannerConfig)
        assert options.max_depth == 77
        assert options.allow_null_branches is True
        assert options.tie_break_seed is None
        assert options.trace is True
        assert options.record_estimates is False

    def test_planner_config_is_frozen(self):
        options = PlannerConfig()

        with pytest.raises(ValidationError):
            options.max_depth = 5
