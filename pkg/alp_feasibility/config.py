"""
Configuration and global settings for the feasibility engine.
Every value comes from SettingsManager.setting (env > config.toml > default).
"""

from typing import Optional

from .logger import logger
from .settings_manager import settings

# ==========================================
# ENVIRONMENT
# ==========================================

def _env_int(name: str) -> Optional[int]:
    """Reads a positive integer from the environment; anything else is ignored."""
    raw = settings.get_env(name)
    if raw is None or not raw.strip():
        return None
    try:
        value = int(raw)
    except ValueError:
        logger.log_warning(f"Ignoring non-integer {name}={raw!r}")
        return None
    if value <= 0:
        logger.log_warning(f"Ignoring non-positive {name}={raw!r}")
        return None
    return value


# ==========================================
# SOLVER
# ==========================================

PIVOT_LIMIT_FACTOR = int(settings.setting("solver", "pivot_limit_factor", 10))
PIVOT_LIMIT_ENV = "ALPFEAS_PIVOT_LIMIT"


def pivot_limit(rows: int, cols: int) -> int:
    """Pivot safety bound: the env override when set, else factor x rows x cols."""
    override = _env_int(PIVOT_LIMIT_ENV)
    if override is not None:
        return override
    return max(1, PIVOT_LIMIT_FACTOR * max(rows, 1) * max(cols, 1))


# ==========================================
# WITNESS & ORACLE
# ==========================================

WITNESS_MAX_EXPONENT = int(settings.setting("witness", "max_exponent", 128))
ORACLE_MAX_NE = int(settings.setting("oracle", "max_ne", 12))

# ==========================================
# CONCURRENCY
# ==========================================

DEFAULT_JOBS = max(1, int(settings.setting("general", "jobs", 1)))

# ==========================================
# BENCH DEFAULTS
# ==========================================

BENCH_SEED = int(settings.setting("bench", "seed", 42))
BENCH_COUNT = int(settings.setting("bench", "count", 100))
BENCH_MAX_VARS = int(settings.setting("bench", "max_vars", 4))
BENCH_MAX_LE = int(settings.setting("bench", "max_le", 3))
BENCH_MAX_LT = int(settings.setting("bench", "max_lt", 2))
BENCH_MAX_NE = int(settings.setting("bench", "max_ne", 3))
BENCH_COEFF_BOUND = int(settings.setting("bench", "coeff_bound", 3))
BENCH_OUT_DIR = settings.setting("bench", "out_dir", "bench_out")
