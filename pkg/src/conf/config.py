from pathlib import Path

from dotenv import load_dotenv
from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

load_dotenv()


class Settings(BaseSettings):
    cache_dir: Path = Path(".siegel_cache")
    default_precision: int = 8
    max_scan_prime: int = 100
    catalog_path: Path | None = None
    log_level: str = "INFO"
    log_config: Path = Path("logging.ini")

    model_config = SettingsConfigDict(
        env_prefix="SIEGEL_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    @field_validator("default_precision")
    @classmethod
    def _fourier_precision(cls, value: int) -> int:
        if value < 4:
            raise ValueError("default_precision must be at least 4")
        return value


settings = Settings()
