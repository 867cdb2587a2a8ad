"""Configuration for the contingent planner, oracle, simulator and benchmark campaign"""
from pathlib import Path
from typing import Optional

from pydantic import AliasChoices, BaseModel, ConfigDict, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class PlannerConfig(BaseModel):
    """Options consumed by a single planning run"""
    model_config = ConfigDict(frozen=True)

    max_depth: int = Field(default=10_000, ge=1, description="Recursion depth limit")
    allow_null_branches: bool = Field(default=False, description="Permit NULL subplans on unachievable branches")
    tie_break_seed: Optional[int] = Field(default=None, description="Reserved; None keeps lexicographic tie-breaking")
    trace: bool = Field(default=False, description="Emit per-node trace events")
    record_estimates: bool = Field(default=False, description="Keep the estimate of every compound task after each consistent update")


class Config(BaseSettings):
    """Settings read from HQCP_* environment variables or an env file"""

    model_config = SettingsConfigDict(
        env_prefix="HQCP_",
        case_sensitive=False,
        extra="ignore",
        populate_by_name=True,
    )

    # Search
    max_depth: int = Field(default=10_000, ge=1, description="Recursion depth limit")
    allow_null_branches: bool = Field(default=False, description="Permit NULL branches (non-strong plans)")
    tie_break_seed: Optional[int] = Field(default=None, description="Reserved tie-break seed")

    # Logging
    log_level: str = Field(
        default="WARNING",
        validation_alias=AliasChoices("HQCP_LOG", "HQCP_LOG_LEVEL"),
        description="Log level (trace verbosity)",
    )
    log_file: Optional[Path] = Field(default=None, description="Optional log file")
    log_format: str = Field(default="console", description="console or json")

    # Oracle and simulation
    oracle_node_budget: int = Field(default=1_000_000, ge=1, description="Exhaustive enumeration node budget")
    samples: int = Field(default=10_000, ge=1, description="Monte-Carlo samples")
    seed: int = Field(default=0, ge=0, lt=2**64, description="64-bit simulation seed")
    sim_workers: int = Field(default=1, ge=1, le=64, description="Simulation shards")

    # Benchmarks
    jobs: int = Field(default=1, ge=1, le=64, description="Parallel benchmark instances")
    out_dir: Path = Field(default=Path("bench-out"), description="Benchmark CSV directory")

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        level = v.upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"log level must be one of {', '.join(LOG_LEVELS)}")
        return level

    @field_validator("log_format")
    @classmethod
    def validate_log_format(cls, v: str) -> str:
        fmt = v.lower()
        if fmt not in ("console", "json"):
            raise ValueError("log format must be console or json")
        return fmt

    @field_validator("log_file")
    @classmethod
    def ensure_log_directory(cls, v: Optional[Path]) -> Optional[Path]:
        if v is not None:
            v.parent.mkdir(parents=True, exist_ok=True)
        return v

    def planner_options(self) -> PlannerConfig:
        """Subset of settings used by planner.plan"""
        return PlannerConfig(
            max_depth=self.max_depth,
            allow_null_branches=self.allow_null_branches,
            tie_break_seed=self.tie_break_seed,
            trace=self.log_level == "DEBUG",
        )
