import logging
import sys

from decouple import config
from pydantic import BaseSettings
from dotenv import load_dotenv

load_dotenv()  # Load environment variables from .env file


class Settings(BaseSettings):
    PROJECT_NAME: str = "Quadrant Walks"
    PROJECT_VERSION: str = "1.0.0"
    API_V1_STR: str = "/api/v1"

    LOG_LEVEL: str = config("WALKS_LOG_LEVEL", default="INFO")
    OUTPUT_DIR: str = config("WALKS_OUTPUT_DIR", default=".")

    # Series truncation order when none is given
    DEFAULT_ORDER: int = config("WALKS_DEFAULT_ORDER", default=16, cast=int)

    # Asymptotic fits
    FIT_PRECISION: int = config("WALKS_FIT_PRECISION", default=64, cast=int)
    FIT_STRIDE: int = config("WALKS_FIT_STRIDE", default=6, cast=int)
    DP_MAX_LENGTH: int = config("WALKS_DP_MAX_LENGTH", default=400, cast=int)

    # Orbit discovery
    ORBIT_MAX_SIZE: int = config("WALKS_ORBIT_MAX_SIZE", default=12, cast=int)
    ORBIT_DECISION_ORDER: int = config("WALKS_ORBIT_DECISION_ORDER", default=4, cast=int)

    # Randomized constant-term checks
    LEMMA_SAMPLES: int = config("WALKS_LEMMA_SAMPLES", default=20, cast=int)
    LEMMA_SEED: int = config("WALKS_LEMMA_SEED", default=2009, cast=int)

    class Config:
        case_sensitive = True


settings = Settings()


def configure_logging(level: str = None) -> None:
    """
    Send log records to stderr so stdout stays clean for results.
    """
    logging.basicConfig(
        stream=sys.stderr,
        level=(level or settings.LOG_LEVEL).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )
