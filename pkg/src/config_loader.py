"""Centralized environment variable loading for om-forge run defaults."""

import os
from typing import Callable, TypeVar

from dotenv import load_dotenv

load_dotenv()

T = TypeVar("T")

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}
_LOG_LEVELS = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}


def _raw(name: str) -> str | None:
    """The stripped value of ``name``, or None when unset or blank."""
    value = os.getenv(name)
    if value is None or value.strip() == "":
        return None
    return value.strip()


def _checked(name: str, value: T, valid: Callable[[T], bool], expected: str) -> T:
    if not valid(value):
        raise RuntimeError(f"{name} must be {expected}, got {value}")
    return value


def _get_str(name: str, default: str, choices: set[str] | None = None) -> str:
    raw = _raw(name)
    if raw is None:
        return default
    if choices is None:
        return raw
    return _checked(name, raw.upper(), lambda v: v in choices, f"one of {sorted(choices)}")


def _get_bool(name: str, default: bool = False) -> bool:
    raw = _raw(name)
    if raw is None:
        return default
    lowered = _checked(name, raw.lower(), lambda v: v in _TRUE | _FALSE, "a boolean flag")
    return lowered in _TRUE


def _get_int(name: str, default: int, minimum: int | None = None) -> int:
    raw = _raw(name)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise RuntimeError(f"Invalid integer for {name}: {raw}") from exc
    if minimum is None:
        return value
    return _checked(name, value, lambda v: v >= minimum, f"at least {minimum}")


CONFIG = {
    # Parallelism cap for per-basis and per-program batches
    "threads": _get_int("OM_FORGE_THREADS", 1, minimum=1),
    # Single seed for every random configuration and genericity retry
    "seed": _get_int("OM_FORGE_SEED", 20240101),
    # Full relabelling search for canonical forms only up to this many elements
    "canonical_max_n": _get_int("OM_FORGE_CANONICAL_MAX_N", 9, minimum=1),
    # Search budgets
    "max_nodes": _get_int("OM_FORGE_MAX_NODES", 500, minimum=1),
    "max_depth": _get_int("OM_FORGE_MAX_DEPTH", 3, minimum=0),
    "max_candidates": _get_int("OM_FORGE_MAX_CANDIDATES", 256, minimum=0),
    "time_ms": _get_int("OM_FORGE_TIME_MS", 0, minimum=0),
    "cross_check": _get_bool("OM_FORGE_CROSS_CHECK", False),
    "log_level": _get_str("OM_FORGE_LOG_LEVEL", "INFO", _LOG_LEVELS),
}
