"""Runtime settings loaded from `.env.local` and the process environment."""
import logging
import os
from functools import lru_cache
from typing import Optional

from dotenv import load_dotenv
from sqlmodel import Field, SQLModel

load_dotenv(".env.local")

DEFAULT_SEED = 0
SEED_ENV = "TSAUG_SEED"


class Settings(SQLModel):
    """Process-wide configuration."""
    seed: int = DEFAULT_SEED
    jobs: int = Field(default=1, ge=1)
    log_level: str = "INFO"
    database_url: str = "sqlite:///tsaug_results.db"
    ucr_root: Optional[str] = None


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings(
        seed=int(os.getenv(SEED_ENV, DEFAULT_SEED)),
        jobs=int(os.getenv("TSAUG_JOBS", 1)),
        log_level=os.getenv("TSAUG_LOG_LEVEL", "INFO"),
        database_url=os.getenv("TSAUG_DATABASE_URL", "sqlite:///tsaug_results.db"),
        ucr_root=os.getenv("TSAUG_UCR_ROOT") or None,
    )


def resolve_seed(flag: Optional[int]) -> int:
    """Seed precedence: explicit flag, then TSAUG_SEED, then 0."""
    if flag is not None:
        return int(flag)
    env_value = os.getenv(SEED_ENV)
    if env_value not in (None, ""):
        return int(env_value)
    return DEFAULT_SEED


def configure_logging(level: Optional[str] = None) -> None:
    logging.basicConfig(
        level=(level or get_settings().log_level).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
