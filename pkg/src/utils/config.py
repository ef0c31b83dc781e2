"""Configuration management using pydantic-settings."""

from pydantic_settings import BaseSettings, SettingsConfigDict
from typing import Literal


class Settings(BaseSettings):
    """Application settings."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="INVSEMI_",
        case_sensitive=False,
    )

    # Randomized property sampling
    seed: int = 0

    # Enumeration bounds
    max_enumeration_size: int = 8
    corpus_max_n: int = 8
    corpus_semilattice_max: int = 6

    # Corpus certification fan-out
    certify_workers: int = 4

    # Globalization witness search (off by default)
    witness_search: bool = False
    witness_search_max_points: int = 10

    # Logging
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "WARNING"

    # Report service
    api_host: str = "127.0.0.1"
    api_port: int = 6500


settings = Settings()
