"""
Application configuration using Pydantic Settings.
Loads from environment variables (prefix PERMOMENTS_) or a .env file.
"""
import json
import logging
import sys
import warnings
from datetime import datetime, timezone

from dotenv import load_dotenv
from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

load_dotenv()


class Settings(BaseSettings):
    """Application settings loaded from environment."""

    model_config = SettingsConfigDict(
        env_prefix="PERMOMENTS_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )

    # Application
    APP_NAME: str = "permoments"
    DEBUG: bool = False
    LOG_LEVEL: str = "WARNING"
    JSON_LOGS: bool = True

    # Parallelism
    THREADS: int = 1

    # Gaussian moment budgets, keyed by the square side min(k, t)
    GAUSSIAN_MAX_T_K3: int = 100
    GAUSSIAN_MAX_T_K4: int = 10
    GAUSSIAN_MAX_T_K5: int = 4

    # Trace guards
    PSI_MAX_DEPTH: int = 4
    PSI_MAX_BOXES: int = 24
    TYPED_COUNT_MAX_AREA: int = 36
    BRUTE_FORCE_MAX_BOXES: int = 10
    BRUTE_FORCE_DIST_MAX_BOXES: int = 9
    ORACLE_MAX_BOXES: int = 12

    # Monte Carlo
    PERMANENT_MAX_SIZE: int = 24
    MC_SHARD_SIZE: int = 50_000
    MC_SIGMA_THRESHOLD: float = 4.0

    # Set by forced(); lifts the Gaussian and brute-force budgets
    FORCED: bool = False

    @field_validator("THREADS")
    @classmethod
    def validate_threads(cls, v: int) -> int:
        """Reject non-positive worker counts."""
        if v < 1:
            raise ValueError("THREADS must be at least 1")
        return v

    @field_validator("MC_SHARD_SIZE")
    @classmethod
    def validate_shard_size(cls, v: int) -> int:
        """Warn if shards are small enough to dominate runtime with overhead."""
        if v < 1:
            raise ValueError("MC_SHARD_SIZE must be at least 1")
        if v < 1000:
            warnings.warn(
                f"MC_SHARD_SIZE={v} is small; sampling will be slow",
                UserWarning,
                stacklevel=2,
            )
        return v

    @field_validator("MC_SIGMA_THRESHOLD")
    @classmethod
    def validate_sigma(cls, v: float) -> float:
        """Warn on thresholds too tight to be useful as a gate."""
        if v <= 0:
            raise ValueError("MC_SIGMA_THRESHOLD must be positive")
        if v < 3:
            warnings.warn(
                f"MC_SIGMA_THRESHOLD={v} will flag many correct runs",
                UserWarning,
                stacklevel=2,
            )
        return v

    def gaussian_budget(self, side: int) -> int | None:
        """Largest other dimension allowed for a square side, None if unlimited."""
        if self.FORCED or side <= 2:
            return None
        return {
            3: self.GAUSSIAN_MAX_T_K3,
            4: self.GAUSSIAN_MAX_T_K4,
            5: self.GAUSSIAN_MAX_T_K5,
        }.get(side, 0)

    def forced(self) -> "Settings":
        """Copy of these settings with budgets lifted."""
        logging.getLogger("permoments.config").warning(
            "Resource budgets lifted by --force; runs may not terminate in "
            "reasonable time"
        )
        return self.model_copy(update={"FORCED": True})


# Cache for settings
_settings: Settings | None = None


def get_settings() -> Settings:
    """Get settings instance (cached)."""
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


class JSONFormatter(logging.Formatter):
    """JSON log formatter for machine-readable runs."""

    def format(self, record: logging.LogRecord) -> str:
        log_entry = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        if record.exc_info and record.exc_info[0]:
            log_entry["exception"] = self.formatException(record.exc_info)
        return json.dumps(log_entry, default=str)


def setup_logging(settings: Settings | None = None) -> logging.Logger:
    """Setup logging for the permoments logger tree."""
    settings = settings or get_settings()
    level_name = "DEBUG" if settings.DEBUG else settings.LOG_LEVEL.upper()
    level = getattr(logging, level_name, logging.WARNING)

    handler = logging.StreamHandler(sys.stderr)
    if settings.JSON_LOGS and not settings.DEBUG:
        handler.setFormatter(JSONFormatter())
    else:
        handler.setFormatter(
            logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")
        )

    logger = logging.getLogger("permoments")
    logger.setLevel(level)
    logger.handlers = [handler]
    logger.propagate = False
    return logger
