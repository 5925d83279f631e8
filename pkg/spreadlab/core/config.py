from pathlib import Path
from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

class Settings(BaseSettings):
    PROJECT_NAME: str = "spreadlab"

    # Exact solver
    SOLVER_LIMIT: int = 24
    SOLVER_CHUNK_SIZE: int = 4096

    # Parallelism (solver batches, verify sweep fan-out)
    WORKERS: int = 1

    # Logging
    LOG_LEVEL: str = "WARNING"

    @field_validator("SOLVER_LIMIT")
    def check_solver_limit(cls, v: int) -> int:
        if v < 0:
            raise ValueError("SOLVER_LIMIT must be non-negative")
        return v

    @field_validator("WORKERS", "SOLVER_CHUNK_SIZE")
    def check_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("must be at least 1")
        return v

    @field_validator("LOG_LEVEL", mode="before")
    def normalize_log_level(cls, v: str) -> str:
        return str(v).strip().upper()

    # Use .env file if it exists, otherwise rely on environment variables
    _env_file = Path(__file__).resolve().parent.parent.parent / ".env"
    model_config = SettingsConfigDict(
        env_prefix="SPREADLAB_",
        env_file=_env_file if _env_file.exists() else None,
        case_sensitive=True,
        extra="ignore"
    )

settings = Settings()
