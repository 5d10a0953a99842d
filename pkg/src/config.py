"""Configuration settings for the cosymplectic lab toolkit."""

import logging
from pathlib import Path
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="COSYM_",
        extra="ignore",
    )

    # Logging
    log_level: str = Field(default="WARNING")

    # Completely-solvable panel
    random_seed: int = Field(default=20240611)
    panel_factor: int = Field(default=2, ge=0)
    panel_coefficient_bound: int = Field(default=3, ge=1)

    # Deformation runner
    deform_workers: int = Field(default=1, ge=1)
    bisection_steps: int = Field(default=6, ge=0)

    # Output
    default_format: str = Field(default="json", pattern=r"^(json|md)$")

    # Application
    api_host: str = Field(default="0.0.0.0")
    api_port: int = Field(default=8000)
    debug: bool = Field(default=False)

    # Paths
    base_dir: Path = Path(__file__).parent.parent


# Global settings instance
settings = Settings()


def configure_logging(level: Optional[str] = None) -> None:
    """
    Install a single stream handler on the root logger.

    Args:
        level: Log level name; defaults to ``settings.log_level``
    """
    root = logging.getLogger()
    root.setLevel((level or settings.log_level).upper())
    if not any(getattr(h, "_cosym", False) for h in root.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
        handler._cosym = True  # type: ignore[attr-defined]
        root.addHandler(handler)
