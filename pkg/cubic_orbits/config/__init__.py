"""
Runtime settings read from the environment.

CLI flags override these values; library calls take them as defaults.
"""

import os
from dataclasses import dataclass


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        return default


@dataclass(frozen=True)
class Settings:
    workers: int
    max_field_order: int
    census_max_q: int
    orbit_max_q: int
    scan_max_q: int
    dense_max_q: int


def get_settings() -> Settings:
    """Build Settings from CUBIC_ORBITS_* environment variables"""
    return Settings(
        workers=max(1, _env_int("CUBIC_ORBITS_WORKERS", os.cpu_count() or 1)),
        max_field_order=_env_int("CUBIC_ORBITS_MAX_FIELD_ORDER", 2**14),
        census_max_q=_env_int("CUBIC_ORBITS_CENSUS_MAX_Q", 64),
        orbit_max_q=_env_int("CUBIC_ORBITS_ORBIT_MAX_Q", 169),
        scan_max_q=_env_int("CUBIC_ORBITS_SCAN_MAX_Q", 64),
        dense_max_q=_env_int("CUBIC_ORBITS_DENSE_MAX_Q", 16),
    )
