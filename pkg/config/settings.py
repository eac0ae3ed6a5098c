from pydantic_settings import BaseSettings

class Settings(BaseSettings):
    """Application settings loaded from environment variables"""

    # Run defaults
    DEFAULT_SHOTS: int = 1024  # 0 selects exact mode
    DEFAULT_TOP_K: int = 4
    DEFAULT_MAX_COMBOS: int = 16
    DEFAULT_SEED: int = 0
    DEFAULT_RETRIES: int = 1
    DEFAULT_BACKEND: str = "analytic"

    # Simulation guards
    MAX_BLOCK_SIZE: int = 24
    STATEVECTOR_MAX_QUBITS: int = 24
    EXACT_MODE_RESOLUTION: int = 10**9

    # Caching
    DISTRIBUTION_CACHE_SIZE: int = 256

    # App Settings
    LOG_LEVEL: str = "WARNING"

    class Config:
        env_file = ".env"
        env_prefix = "SHOR_"
        case_sensitive = True

settings = Settings()
