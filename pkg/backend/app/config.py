from typing import Literal

from pydantic_settings import BaseSettings, SettingsConfigDict

REPORT_SCHEMA = "topmon-report/1"


class Settings(BaseSettings):
    """Verification defaults loaded from environment variables (prefix TOPMON_)."""

    model_config = SettingsConfigDict(
        env_prefix="TOPMON_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Logging
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "WARNING"

    # Search windows
    window: int = 12
    degree: int = 4
    max_factors: int = 3

    # Net convergence
    depth: int = 32
    level: int = 10
    seed: int = 0
    superset_samples: int = 200
    exhaustive_extension_limit: int = 10
    multiplicity_cap: int = 10_000
    separation_max_level: int = 64

    # Rational-limit exclusion
    qmax: int = 1_000_000

    # Suite execution
    suite_concurrency: int = 4

    @property
    def report_schema(self) -> str:
        """Version tag written into structured reports."""
        return REPORT_SCHEMA


settings = Settings()
