"""Toolkit configuration using Pydantic settings."""

import logging

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Toolkit settings loaded from environment variables (prefix EQUITHETA_)."""

    log_level: str = "INFO"

    # Enumeration limits
    enum_cap: int = Field(default=10**7, ge=1)  # max items in one degree/residue enumeration
    max_field_order: int = Field(default=64, ge=2)
    max_group_order: int = Field(default=256, ge=1)

    # L-function truncation
    default_guard: int = Field(default=3, ge=1)

    # Fitting ideals
    fit_max_generators: int = Field(default=5, ge=1)
    max_minors: int = Field(default=20000, ge=1)
    max_precision: int = Field(default=40, ge=1)  # highest l-adic level tried by exact_precision
    harness_retries: int = Field(default=200, ge=1)

    # Numerics
    weil_tolerance: float = Field(default=1e-6, gt=0)

    # Parallelism (1 = sequential)
    workers: int = Field(default=1, ge=1)

    model_config = SettingsConfigDict(
        env_prefix="EQUITHETA_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


# Global settings instance
settings = Settings()


# Configure logging
def setup_logging() -> None:
    """Configure toolkit logging."""
    log_level = getattr(logging, settings.log_level.upper(), logging.INFO)

    logging.basicConfig(
        level=log_level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )

    # Numba compiles galois ufuncs lazily and is chatty at DEBUG
    logging.getLogger("numba").setLevel(logging.WARNING)


# Initialize logging on module import
setup_logging()
