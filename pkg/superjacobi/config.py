import os
from dataclasses import dataclass
from typing import Tuple

from dotenv import load_dotenv

from superjacobi.arith import Rational, parse_rational

# Load environment variables
load_dotenv()

DEFAULT_RETRY_T = "1/2,5/3,7/11,13/7"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass(frozen=True)
class Settings:
    """Runtime settings read from the environment (or a .env file)"""

    retry_t: Tuple[Rational, ...]
    max_size: int
    seed: int
    log_level: str


def _int_setting(name: str, default: int, minimum: int = 0) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        value = None
    if value is None or value < minimum:
        raise ValueError(
            f"{name} must be an integer >= {minimum}, got '{raw}'. "
            "Fix it in your .env file (see .env.example)."
        )
    return value


def get_settings() -> Settings:
    """Read and validate the SUPERJACOBI_* variables"""
    raw_retry = os.getenv("SUPERJACOBI_RETRY_T") or DEFAULT_RETRY_T
    try:
        retry_t = tuple(parse_rational(piece) for piece in raw_retry.split(",") if piece.strip())
    except ValueError as e:
        raise ValueError(
            f"SUPERJACOBI_RETRY_T must be a comma-separated list of rationals like 1/2,5/3, got '{raw_retry}'. "
            "Fix it in your .env file (see .env.example)."
        ) from e
    if not retry_t:
        raise ValueError("SUPERJACOBI_RETRY_T must name at least one slope (see .env.example).")

    log_level = (os.getenv("SUPERJACOBI_LOG_LEVEL") or "WARNING").strip().upper()
    if log_level not in LOG_LEVELS:
        raise ValueError(
            f"SUPERJACOBI_LOG_LEVEL must be one of {', '.join(LOG_LEVELS)}, got '{log_level}'. "
            "Fix it in your .env file (see .env.example)."
        )

    return Settings(
        retry_t=retry_t,
        max_size=_int_setting("SUPERJACOBI_MAX_SIZE", 4),
        seed=_int_setting("SUPERJACOBI_SEED", 0),
        log_level=log_level,
    )
