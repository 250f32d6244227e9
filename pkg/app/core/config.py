from functools import lru_cache
from typing import Optional

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    # App settings
    APP_NAME: str = "IRS-OFDM Channel Estimation Simulator"
    APP_VERSION: str = "1.0.0"
    DEBUG: bool = False
    LOG_LEVEL: str = "INFO"

    # Monte-Carlo workers (unset -> all available cores)
    SIM_THREADS: Optional[int] = None

    # Scenario settings
    SCENARIO_DIR: str = "app/scenarios"
    DEFAULT_SCENARIO: str = "fig3.json"

    # HTTP simulation requests are capped to keep responses interactive
    API_MAX_TRIALS: int = 200

    # Write measured wall time into the CSV seconds column
    CSV_TIMINGS: bool = False

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


settings = get_settings()
