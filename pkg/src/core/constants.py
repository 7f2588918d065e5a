"""Shared constants and environment-driven defaults."""

from __future__ import annotations

import os
from pathlib import Path

from dotenv import load_dotenv

PROJECT_ROOT = Path(__file__).resolve().parents[2]

# Absolute path so config.env is found even when cwd is elsewhere.
ENV_CONFIG_FILE = str(PROJECT_ROOT / "config.env")

# Real environment variables always win over config.env.
USE_DOTENV = os.getenv("USE_DOTENV", "true").strip().lower() in {"1", "true", "yes", "y", "on"}
if USE_DOTENV:
    load_dotenv(ENV_CONFIG_FILE, override=False)

FIXTURES_DIR = PROJECT_ROOT / "fixtures"
REPORT_SCHEMA_FILE = FIXTURES_DIR / "report.schema.json"


def _get_bool_env(name: str, default: bool) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() in {"1", "true", "yes", "y", "on"}


def _get_float_env(name: str, default: float) -> float:
    value = os.getenv(name)
    if value is None or value.strip() == "":
        return default
    return float(value)


def _get_int_env(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or value.strip() == "":
        return default
    return int(value)


# =============================================================================
# LOGGING
# =============================================================================
LOGS_DIR = os.getenv("VISS_LOG_DIR", "logs")
LOG_LEVEL = os.getenv("VISS_LOG_LEVEL", "INFO")
LOG_TO_FILE = _get_bool_env("VISS_LOG_TO_FILE", True)

# =============================================================================
# RANK DECISIONS
# =============================================================================
# Absolute threshold on singular values; the worked DZ1 example uses 0.005.
DEFAULT_EPS = _get_float_env("VISS_EPS", 1e-4)
DEFAULT_MAX_DEFLATIONS = _get_int_env("VISS_MAX_DEFLATIONS", 10)

# =============================================================================
# NEWTON + EPSILON INFLATION
# =============================================================================
NEWTON_MAX_STEPS = _get_int_env("VISS_NEWTON_MAX_STEPS", 20)
NEWTON_TOL = _get_float_env("VISS_NEWTON_TOL", 1e-15)
INFLATION_FACTOR = _get_float_env("VISS_INFLATION_FACTOR", 1.1)
INFLATION_FLOOR = _get_float_env("VISS_INFLATION_FLOOR", 1e-306)
INFLATION_ROUNDS = _get_int_env("VISS_INFLATION_ROUNDS", 15)

# =============================================================================
# BENCHMARK HARNESS
# =============================================================================
BENCH_WORKERS = _get_int_env("VISS_BENCH_WORKERS", 4)
ENABLE_PARALLEL_BENCH = _get_bool_env("VISS_ENABLE_PARALLEL_BENCH", True)
BENCH_JSONL_FILE = os.getenv("VISS_BENCH_JSONL", "bench_results.jsonl")

# =============================================================================
# FRESH SYMBOLS
# =============================================================================
LAMBDA_PREFIX = "lam"
SMOOTHING_PREFIX = "b"

# =============================================================================
# CLI EXIT CODES
# =============================================================================
EXIT_CERTIFIED = 0
EXIT_USAGE = 2
EXIT_NOT_CERTIFIED = 3
EXIT_DEFLATION_CAP = 4
