from __future__ import annotations

import logging
import os
from dataclasses import dataclass

from dotenv import load_dotenv


@dataclass(slots=True)
class Settings:
    budget: int
    max_n: int
    max_workers: int
    log_level: str


_settings: Settings | None = None


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name, str(default))
    try:
        value = int(raw)
    except ValueError as exc:
        raise RuntimeError(f"{name} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise RuntimeError(f"{name} must be positive, got {value}")
    return value


def load_settings() -> Settings:
    global _settings
    if _settings is not None:
        return _settings

    load_dotenv()

    budget = _int_env("LEX_BUDGET", 10**8)
    max_n = _int_env("LEX_MAX_N", 2000)
    max_workers = _int_env("LEX_WORKERS", 4)
    log_level = os.getenv("LOG_LEVEL", "INFO")

    logging.basicConfig(
        level=getattr(logging, log_level.upper(), logging.INFO),
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
    )

    _settings = Settings(
        budget=budget,
        max_n=max_n,
        max_workers=max_workers,
        log_level=log_level,
    )
    return _settings


def get_settings() -> Settings:
    return load_settings()


def reset_settings() -> None:
    global _settings
    _settings = None
