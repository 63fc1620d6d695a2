from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

SelectionPolicy = Literal["round-robin", "random"]


class Settings(BaseSettings):
    """Application configuration loaded from environment variables."""

    model_config = SettingsConfigDict(env_prefix="QRELIEF_", env_file=".env", extra="ignore")

    app_name: str = "QRelief"
    debug: bool = False

    # Run defaults
    default_tau: float = 0.5
    default_shots: int = Field(default=8192, ge=1, le=10_000_000)
    default_policy: SelectionPolicy = "round-robin"

    # Simulation limits
    max_qubits: int = Field(default=24, ge=1, le=30)
    prep_retry_factor: int = Field(default=64, ge=1, le=4096)
    similarity_workers: int = Field(default=4, ge=1, le=64)

    # History and logging
    sqlite_path: str = "./qrelief.db"
    history_enabled: bool = False
    log_path: str = "./qrelief.log"


settings = Settings()
