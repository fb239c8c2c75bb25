"""
Compiler settings.

Search limits, numerical tolerances and file locations. Every field can be
overridden by an environment variable of the same name or a ``.env`` file.
"""

from pathlib import Path

from pydantic_settings import BaseSettings

_PACKAGE_DIR = Path(__file__).resolve().parent


class Settings(BaseSettings):
    """Compiler settings loaded from environment variables."""

    # Project
    PROJECT_NAME: str = "twirlc"
    VERSION: str = "1.0.0"
    DEBUG: bool = False
    LOG_LEVEL: str = "INFO"

    # Parallelism (verdict enumeration worker pool)
    TWIRLC_THREADS: int = 4

    # Search limits
    EXACT_COVER_LIMIT: int = 24
    MAX_CODE_LOG2: int = 24
    SPREAD_SEARCH_LIMIT: int = 200_000

    # Numerical oracle
    MAX_DENSE_QUBITS: int = 8
    TOLERANCE: float = 1e-12
    TWIRL_TOLERANCE: float = 1e-10
    SLOPE_MIN: float = 1.8
    SLOPE_MAX: float = 2.2

    # Files
    DATA_DIR: Path = _PACKAGE_DIR / "data"
    DEFAULT_OUT_DIR: Path = Path("twirlc-out")

    class Config:
        env_file = ".env"
        case_sensitive = True


settings = Settings()
