"""
ED Degree Toolkit Configuration File

Optional environment variables (a .env file in the working directory is read too):
  - EDD_SMOOTHNESS_BOUND: largest plane-curve degree checked for smoothness (default 6)
  - EDD_LOG_LEVEL: log level for the command line tool (default WARNING)
  - EDD_ORACLE_TOLERANCE: clustering tolerance of the numeric root oracle (default 1e-4)
  - EDD_MAX_PARALLEL_WORKERS: process pool size for curve sweeps (default 1)
"""
import logging
import os

# Load .env file if it exists (requires: pip install python-dotenv)
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass  # dotenv not installed, use system environment variables only

logger = logging.getLogger(__name__)

DEFAULT_SMOOTHNESS_BOUND = 6
DEFAULT_ORACLE_TOLERANCE = 1e-4
DEFAULT_MAX_PARALLEL_WORKERS = 1


def _int_from_env(name: str, default: int, minimum: int = 1) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning(f"[Config] {name}={raw!r} is not an integer, using {default}")
        return default
    if value < minimum:
        logger.warning(f"[Config] {name}={value} is below {minimum}, using {default}")
        return default
    return value


def _float_from_env(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = float(raw)
    except ValueError:
        logger.warning(f"[Config] {name}={raw!r} is not a number, using {default}")
        return default
    if not value > 0:
        logger.warning(f"[Config] {name}={value} must be positive, using {default}")
        return default
    return value


def get_smoothness_bound() -> int:
    """Degree bound for the exact smoothness check, read at call time"""
    return _int_from_env("EDD_SMOOTHNESS_BOUND", DEFAULT_SMOOTHNESS_BOUND)


# Logging
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
DEFAULT_LOG_LEVEL = "WARNING"


def get_log_level() -> str:
    """EDD_LOG_LEVEL as a logging level name; unknown names fall back to WARNING"""
    raw = os.getenv("EDD_LOG_LEVEL", "").strip().upper()
    if not raw:
        return DEFAULT_LOG_LEVEL
    if raw not in LOG_LEVELS:
        logger.warning(f"[Config] EDD_LOG_LEVEL={raw!r} is not one of {', '.join(LOG_LEVELS)}, "
                       f"using {DEFAULT_LOG_LEVEL}")
        return DEFAULT_LOG_LEVEL
    return raw


LOG_FORMAT = '[%(asctime)s] %(levelname)s - %(message)s'

# Numeric oracle (test support only)
ORACLE_TOLERANCE = _float_from_env("EDD_ORACLE_TOLERANCE", DEFAULT_ORACLE_TOLERANCE)

# Parallel Configuration
MAX_PARALLEL_WORKERS = _int_from_env("EDD_MAX_PARALLEL_WORKERS", DEFAULT_MAX_PARALLEL_WORKERS)
