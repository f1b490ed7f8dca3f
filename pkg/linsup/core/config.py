from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    PROJECT_NAME: str = "LinSup"
    VERSION: str = "0.1.0"

    LOG_LEVEL: str = "INFO"

    # Solver settings
    MAX_SWEEPS: int = 100_000

    # Harness settings
    WORKERS: int = 1
    REGENERATION_LIMIT: int = 20
    SIMPLEX_SAMPLE_EVERY: int = 10
    BUDGET_MULTIPLIER: float = 1.1
    EPSILON_FLOOR: float = 1e-20

    model_config = SettingsConfigDict(
        case_sensitive=True,
        env_prefix="LINSUP_",
        env_file=("config.env", "config.local.env"),
        env_file_encoding="utf-8",
        extra="ignore",
    )


settings = Settings()
