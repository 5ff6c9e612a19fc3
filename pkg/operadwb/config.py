from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    SEED: int = 0
    BUDGET: int = 200
    MAX_ARITY: int = 3
    REWRITE_LIMIT: int = 10_000
    LOG_LEVEL: str = "WARNING"
    RENDER_SIZE: int = 320  # points per side

    model_config = {"env_file": ".env", "env_prefix": "OPERAD_WB_", "extra": "ignore"}


settings = Settings()
